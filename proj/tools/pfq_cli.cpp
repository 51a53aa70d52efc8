#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>

#include "pfq/algebraic.hpp"
#include "pfq/evaluation.hpp"
#include "pfq/newton.hpp"
#include "pfq/oracle.hpp"
#include "pfq/primes.hpp"

using nlohmann::json;
using namespace pfq;

namespace {

// Rationals travel as strings "a/b" so nothing is rounded; the text format
// prints the same object one key per line.
void emit(const json& out, const std::string& format) {
    if (format == "json") {
        std::cout << out.dump() << "\n";
        return;
    }
    for (auto it = out.begin(); it != out.end(); ++it) {
        std::cout << it.key() << ": ";
        if (it->is_string())
            std::cout << it->get<std::string>();
        else
            std::cout << it->dump();
        std::cout << "\n";
    }
}

struct ParamsOpt {
    std::string top, bottom;

    HParams get() const {
        return HParams{parse_rational_list(top), parse_rational_list(bottom)};
    }
};

void add_params(CLI::App* cmd, ParamsOpt& po, const std::string& prefix = "") {
    cmd->fallthrough();  // lets --format appear after the subcommand
    cmd->add_option("--" + prefix + "top", po.top,
                    "comma-separated top parameters (rationals)");
    cmd->add_option("--" + prefix + "bottom", po.bottom,
                    "comma-separated bottom parameters (rationals)");
}

json rational_json(const Rational& x) { return to_string(x); }

json int_json(const Int& x) {
    if (x.fits_slong_p()) return x.get_si();
    return x.get_str();
}

int run(int argc, char** argv) {
    CLI::App app{"p-adic analysis of generalized hypergeometric series"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    ParamsOpt po;
    std::string nu_s, nu1_s, a_s, n_s, drift_s;
    long p = 0, target = 0, trunc = 0, verify_k = 0;

    auto* c_val = app.add_subcommand("valuation",
                                     "drifted valuation min_k val_p(h_k) + nu*k");
    add_params(c_val, po);
    c_val->add_option("-p", p, "prime")->required();
    c_val->add_option("--nu", nu_s, "drift (rational)")->required();
    c_val->callback([&] {
        DriftedValuation dv = drifted_valuation(po.get(), p, parse_rational(nu_s));
        json out;
        if (dv.minus_infinity) {
            out["value"] = "-inf";
        } else {
            out["value"] = rational_json(dv.value);
            out["argmin"] = int_json(dv.argmin);
        }
        emit(out, format);
    });

    auto* c_np = app.add_subcommand("newton",
                                    "Newton polygon of the drifted valuation");
    add_params(c_np, po);
    c_np->add_option("-p", p, "prime")->required();
    c_np->add_option("--nu1", nu1_s,
                     "domain slope when the valuation diverges at the critical drift");
    c_np->callback([&] {
        std::optional<Rational> nu1;
        if (!nu1_s.empty()) nu1 = parse_rational(nu1_s);
        NewtonPolygon poly = newton_polygon(po.get(), p, nu1);
        json verts = json::array();
        for (const auto& [x, y] : poly.vertices)
            verts.push_back({rational_json(x), rational_json(y)});
        emit({{"domain_slope", rational_json(poly.domain_slope)},
              {"vertices", verts}},
             format);
    });

    auto* c_ev = app.add_subcommand("eval", "p-adic value of the series at a");
    add_params(c_ev, po);
    c_ev->add_option("-p", p, "prime")->required();
    c_ev->add_option("-a", a_s, "argument (rational)")->required();
    c_ev->add_option("-N", target, "absolute precision p^N")->required();
    c_ev->add_option("--nu", drift_s, "drift overriding the built-in heuristic");
    c_ev->callback([&] {
        std::optional<Rational> drift;
        if (!drift_s.empty()) drift = parse_rational(drift_s);
        PadicApprox v = eval_padic(po.get(), p, parse_rational(a_s), target, drift);
        emit({{"p", v.p},
              {"precision", v.target},
              {"shift", v.shift},
              {"unit", v.unit_residue.get_str()},
              {"terms", v.terms},
              {"approx", to_string(v)}},
             format);
    });

    auto* c_gp = app.add_subcommand("good-primes",
                                    "description of the good-reduction primes");
    add_params(c_gp, po);
    c_gp->callback([&] {
        HParams hp = po.get();
        GoodReductionSet s = good_reduction_set(hp);
        json out;
        out["d"] = int_json(s.empty ? common_denominator(hp) : s.modulus);
        out["bound"] = int_json(s.bound);
        out["small_good"] = json::array();
        for (const auto& q : s.small_good) out["small_good"].push_back(int_json(q));
        out["good_classes"] = json::array();
        for (const auto& c : s.good_classes) out["good_classes"].push_back(int_json(c));
        if (s.empty) out["empty_reason"] = s.empty_reason;
        emit(out, format);
    });

    auto* c_sm = app.add_subcommand("series-mod", "first K coefficients modulo p");
    add_params(c_sm, po);
    c_sm->add_option("-p", p, "prime")->required();
    c_sm->add_option("-K", trunc, "number of coefficients")->required();
    c_sm->callback([&] {
        emit({{"p", p}, {"coefficients", series_mod_p(po.get(), p, trunc)}}, format);
    });

    auto* c_cc = app.add_subcommand(
        "coeff-class", "multiplicative class (valuation, unit mod p) of h_N");
    add_params(c_cc, po);
    c_cc->add_option("-p", p, "prime")->required();
    c_cc->add_option("-N", n_s, "coefficient index")->required();
    c_cc->callback([&] {
        MultClass c = coefficient_class(po.get(), p, Int(n_s));
        emit({{"p", p}, {"valuation", int_json(c.valuation)},
              {"unit", int_json(c.unit)}},
             format);
    });

    auto* c_an = app.add_subcommand(
        "annihilator", "polynomial relation among Frobenius powers of h mod p");
    add_params(c_an, po);
    c_an->add_option("-p", p, "prime")->required();
    c_an->add_option("--verify", verify_k,
                     "also check the relation against the series truncated at K");
    c_an->callback([&] {
        HParams hp = po.get();
        Annihilator a = annihilator(hp, p);
        json coeffs = json::array();
        for (const auto& v : a.coeffs) coeffs.push_back(v.c);
        json out{{"p", a.p}, {"coefficients", coeffs}};
        if (verify_k > 0) {
            bool ok = verify_annihilator(hp, a, verify_k);
            out["verified"] = ok;
            if (!ok) throw math_error("annihilator failed verification");
        }
        emit(out, format);
    });

    ParamsOpt po_b;
    auto* c_cg = app.add_subcommand("congruent",
                                    "whether two series agree modulo p");
    add_params(c_cg, po, "a-");
    add_params(c_cg, po_b, "b-");
    c_cg->add_option("-p", p, "prime")->required();
    c_cg->callback([&] {
        emit({{"congruent", are_congruent(po.get(), po_b.get(), p)}}, format);
    });

    auto* c_or = app.add_subcommand(
        "oracle", "reference coefficients, or their valuations when -p is given");
    add_params(c_or, po);
    c_or->add_option("-K", trunc, "number of terms")->required();
    c_or->add_option("-p", p, "prime for the valuation profile");
    c_or->callback([&] {
        if (p > 0) {
            emit({{"p", p}, {"profile", oracle::valuation_profile(po.get(), p, trunc)}},
                 format);
        } else {
            json coeffs = json::array();
            for (const auto& h : oracle::coefficients(po.get(), trunc))
                coeffs.push_back(rational_json(h));
            emit({{"coefficients", coeffs}}, format);
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const math_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 1;
    } catch (const cap_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
