#include <cstdlib>
#include <iostream>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nctheta/presets.hpp"
#include "nctheta/quiver.hpp"
#include "nctheta/serialize.hpp"
#include "nctheta/verify.hpp"

namespace {

using nct::cplx;
using nct::IntSymMatrix;
using nct::SkewMatrix;
using nlohmann::json;

constexpr int kExitFail = 1;
constexpr int kExitParse = 2;
constexpr int kExitMath = 3;

/// Numeric flag value: accepts decimals and exact rationals "p/q".
double parse_real(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("bad numeric value: " + text);
        return v;
    }
    long long num = std::stoll(text.substr(0, slash));
    long long den = std::stoll(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return static_cast<double>(num) / static_cast<double>(den);
}

struct TripleFlags {
    std::string preset;
    std::string a_list;  // n=1 comma list, e.g. "0,1,3"
    std::string aa, ab, ac;
    std::string theta12 = "0";
    bool commutative = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--preset", preset, "label preset: line (n=1 moduli 0,1,3) or sec5");
        cmd->add_option("--A", a_list, "n=1 labels as comma-separated scalars, e.g. 0,1,3");
        cmd->add_option("--Aa", aa, "label matrix A_a as JSON");
        cmd->add_option("--Ab", ab, "label matrix A_b as JSON");
        cmd->add_option("--Ac", ac, "label matrix A_c as JSON");
        cmd->add_option("--theta12", theta12, "deformation entry theta_{12} (rational p/q ok)");
        cmd->add_flag("--commutative", commutative, "force the theta = 0 path");
    }

    std::vector<IntSymMatrix> labels() const {
        if (preset == "line") return nct::presets::line_triple();
        if (preset == "sec5") return nct::presets::sec5_labels();
        if (!preset.empty()) throw std::invalid_argument("unknown preset: " + preset);
        if (!a_list.empty()) {
            std::vector<IntSymMatrix> out;
            std::istringstream is(a_list);
            std::string tok;
            while (std::getline(is, tok, ',')) out.push_back(IntSymMatrix::scalar(std::stoll(tok)));
            if (out.size() < 3) throw std::invalid_argument("--A needs at least three scalars");
            return out;
        }
        if (aa.empty() || ab.empty() || ac.empty())
            throw std::invalid_argument("provide --preset, --A, or --Aa/--Ab/--Ac");
        return {nct::parse_int_sym(aa), nct::parse_int_sym(ab), nct::parse_int_sym(ac)};
    }

    SkewMatrix theta(int n) const {
        double t = commutative ? 0.0 : parse_real(theta12);
        if (n == 2) return SkewMatrix::theta12(t);
        if (t != 0.0) throw std::invalid_argument("--theta12 requires n = 2");
        return SkewMatrix(nct::RMat::Zero(n, n));
    }
};

json report_json(const std::string& name, const nct::Report& rep, double tol) {
    json j;
    j["check"] = name;
    j["pass"] = rep.pass;
    j["max_err"] = rep.max_err;
    j["checks"] = rep.checks;
    j["tol"] = tol;
    if (rep.vacuous) j["vacuous"] = true;
    if (!rep.detail.empty()) j["detail"] = rep.detail;
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"theta-function product formulas: evaluate, tabulate, verify"};
    app.require_subcommand(1);

    // ---- eval ----------------------------------------------------------
    auto* eval = app.add_subcommand("eval", "evaluate a basis function or theta sum");
    eval->require_subcommand(1);
    int ev_n = 1;
    std::string ev_omega, ev_z, ev_c1, ev_c2, ev_mu = "0", ev_aa, ev_ab, ev_theta12 = "0";
    double ev_tol = 1e-12;

    auto* ev_theta = eval->add_subcommand("theta", "theta function with characteristics");
    ev_theta->add_option("--n", ev_n, "dimension")->required();
    ev_theta->add_option("--omega", ev_omega, "period matrix, JSON of [re,im] entries")->required();
    ev_theta->add_option("--z", ev_z, "argument, JSON list of [re,im] pairs")->required();
    ev_theta->add_option("--c1", ev_c1, "first characteristic (comma list, rationals ok)");
    ev_theta->add_option("--c2", ev_c2, "second characteristic (comma list, rationals ok)");
    ev_theta->add_option("--tol", ev_tol, "truncation tolerance");

    auto add_basis_flags = [&](CLI::App* cmd) {
        cmd->add_option("--n", ev_n, "dimension")->required();
        cmd->add_option("--Aa", ev_aa, "label matrix A_a as JSON")->required();
        cmd->add_option("--Ab", ev_ab, "label matrix A_b as JSON")->required();
        cmd->add_option("--mu", ev_mu, "coset index, comma-separated integers");
        cmd->add_option("--z", ev_z, "argument, JSON list of [re,im] pairs")->required();
        cmd->add_option("--tol", ev_tol, "truncation tolerance");
    };
    auto* ev_comm = eval->add_subcommand("e-comm", "commutative basis function");
    add_basis_flags(ev_comm);
    auto* ev_nc = eval->add_subcommand("e-nc", "deformed basis function");
    add_basis_flags(ev_nc);
    ev_nc->add_option("--theta12", ev_theta12, "deformation entry (rational p/q ok)");

    // ---- structure -------------------------------------------------------
    auto* structure = app.add_subcommand("structure", "tabulate the structure tensor");
    TripleFlags st_flags;
    st_flags.attach(structure);
    double st_tol = 1e-12;
    structure->add_option("--tol", st_tol, "truncation tolerance");

    // ---- verify ----------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "run a property suite");
    verify->require_subcommand(1);
    TripleFlags vf_flags;
    std::uint64_t vf_seed = 1;
    int vf_samples = 0;  // 0 = per-check default
    std::string vf_tol;  // empty = per-check default
    double vf_h = 1e-5;
    std::vector<CLI::App*> vf_subs;
    for (const char* name : {"addition", "star", "mirror", "poisson", "lemma23", "dbar",
                             "associativity", "leibniz", "curvature", "twisted"}) {
        auto* sub = verify->add_subcommand(name);
        vf_flags.attach(sub);
        sub->add_option("--seed", vf_seed, "random seed");
        sub->add_option("--samples", vf_samples, "sample count (0 = default)");
        sub->add_option("--tol", vf_tol, "tolerance (rational p/q ok)");
        sub->add_option("--fd-step", vf_h, "finite-difference step");
        vf_subs.push_back(sub);
    }

    // ---- quiver ----------------------------------------------------------
    auto* quiver = app.add_subcommand("quiver", "enumerate labels and emit the hom quiver");
    std::int64_t qv_det = -4, qv_bound = 4;
    std::string qv_preset, qv_dot, qv_json;
    quiver->add_option("--det", qv_det, "determinant target");
    quiver->add_option("--bound", qv_bound, "entry bound for the enumeration window");
    quiver->add_option("--preset", qv_preset, "label preset (sec5)");
    quiver->add_option("--dot", qv_dot, "write DOT to this file (default: stdout)");
    quiver->add_option("--json", qv_json, "write JSON adjacency to this file");

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (const char* env = std::getenv("NC_THETA_THREADS")) {
        int k = std::atoi(env);
        if (k > 0) omp_set_num_threads(k);
    }
#endif

    auto print_value = [&](const nct::ThetaValue& v, double tol) {
        json out;
        out["value"] = nct::complex_to_json(v.value);
        out["tol"] = tol;
        out["truncation_radius"] = v.radius;
        std::cout << out.dump() << "\n";
    };

    auto parse_char = [&](const std::string& text, int n) {
        nct::RVec c = nct::RVec::Zero(n);
        if (text.empty()) return c;
        std::istringstream is(text);
        std::string tok;
        int i = 0;
        while (std::getline(is, tok, ',')) {
            if (i >= n) throw std::invalid_argument("too many characteristic entries");
            c[i++] = parse_real(tok);
        }
        if (i != n) throw std::invalid_argument("wrong characteristic length");
        return c;
    };

    if (ev_theta->parsed()) {
        nct::SiegelPoint omega{nct::parse_complex_mat(ev_omega, ev_n)};
        nct::ThetaCharacteristics ch{parse_char(ev_c1, ev_n), parse_char(ev_c2, ev_n)};
        print_value(nct::theta_with_char(ch, omega, nct::parse_complex_vec(ev_z, ev_n), ev_tol),
                    ev_tol);
        return 0;
    }
    if (ev_comm->parsed() || ev_nc->parsed()) {
        IntSymMatrix a_a = nct::parse_int_sym(ev_aa);
        IntSymMatrix a_b = nct::parse_int_sym(ev_ab);
        nct::CosetIndex mu = nct::reduce_mod(a_b - a_a, nct::parse_int_vec(ev_mu, ev_n));
        nct::CVec z = nct::parse_complex_vec(ev_z, ev_n);
        if (ev_comm->parsed()) {
            print_value(nct::e_comm(a_a, a_b, mu, z, ev_tol), ev_tol);
        } else {
            double t = parse_real(ev_theta12);
            SkewMatrix theta = ev_n == 2 ? SkewMatrix::theta12(t)
                                         : SkewMatrix(nct::RMat::Zero(ev_n, ev_n) * t);
            if (ev_n != 2 && t != 0.0) throw std::invalid_argument("--theta12 requires n = 2");
            print_value(nct::e_nc(a_a, a_b, mu, z, theta, ev_tol), ev_tol);
        }
        return 0;
    }

    if (structure->parsed()) {
        auto labels = st_flags.labels();
        nct::LabelTriple triple(labels[0], labels[1], labels[2], st_flags.theta(labels[0].n()));
        json out = nct::tensor_to_json(nct::structure_tensor(triple, st_tol));
        out["commutative"] = triple.commutative();
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (verify->parsed()) {
        CLI::App* sub = verify->get_subcommands().front();
        const std::string name = sub->get_name();
        auto tol_or = [&](double dflt) { return vf_tol.empty() ? dflt : parse_real(vf_tol); };
        auto samples_or = [&](int dflt) { return vf_samples > 0 ? vf_samples : dflt; };

        nct::Report rep;
        double tol = 0.0;
        if (name == "addition" || (name == "star" && (!vf_flags.preset.empty() ||
                                                      !vf_flags.a_list.empty() ||
                                                      !vf_flags.aa.empty()))) {
            auto labels = vf_flags.labels();
            SkewMatrix theta = vf_flags.theta(labels[0].n());
            tol = tol_or(theta.is_zero() ? (labels[0].n() == 1 ? 1e-9 : 1e-8) : 1e-8);
            nct::LabelTriple triple(labels[0], labels[1], labels[2], theta);
            rep = nct::verify_addition(triple, samples_or(theta.is_zero() ? 20 : 10), vf_seed, tol);
        } else if (name == "star") {
            tol = tol_or(1e-9);
            rep = nct::verify_star_oracle(25, samples_or(5), vf_seed, tol);
            nct::Report phase = nct::verify_plane_wave_phase(samples_or(20), vf_seed, 1e-12);
            std::cout << report_json("star-phase", phase, 1e-12).dump() << "\n";
            if (!phase.pass) rep.pass = false;
        } else if (name == "mirror") {
            auto labels = vf_flags.labels();
            tol = tol_or(1e-10);
            rep = nct::verify_mirror_equality(labels[0], labels[1], labels[2], tol);
        } else if (name == "poisson") {
            tol = tol_or(1e-10);
            rep = nct::verify_poisson(5, samples_or(20), vf_seed, tol);
        } else if (name == "lemma23") {
            tol = tol_or(1e-9);
            rep = nct::verify_lemma23(samples_or(10), 20, vf_seed, tol);
        } else if (name == "dbar") {
            tol = tol_or(1e-6);
            std::vector<IntSymMatrix> diffs = {
                IntSymMatrix::scalar(1), IntSymMatrix::scalar(2), IntSymMatrix::diag({1, 2}),
                IntSymMatrix::diag({3, 3})};
            rep = nct::verify_dbar(diffs, samples_or(20), vf_h, tol, vf_seed);
        } else if (name == "associativity") {
            tol = tol_or(1e-9);
            std::vector<IntSymMatrix> labels;
            SkewMatrix theta = SkewMatrix(nct::RMat::Zero(1, 1));
            if (vf_flags.preset == "sec5") {
                labels = nct::presets::sec5_labels();
                labels.push_back(nct::presets::sec5_a4());
                theta = vf_flags.theta(2);
                tol = tol_or(1e-8);
            } else if (!vf_flags.a_list.empty()) {
                labels = vf_flags.labels();
                if (labels.size() < 4) throw std::invalid_argument("associativity needs four labels");
                theta = vf_flags.theta(1);
            } else {
                labels = nct::presets::line_quadruple();
            }
            rep = nct::check_associativity(labels[0], labels[1], labels[2], labels[3], theta, tol);
        } else if (name == "leibniz") {
            auto labels = vf_flags.preset.empty() && vf_flags.a_list.empty() && vf_flags.aa.empty()
                              ? nct::presets::line_triple()
                              : vf_flags.labels();
            tol = tol_or(1e-5);
            rep = nct::verify_leibniz(labels[0], labels[1], labels[2], samples_or(5), 3, vf_seed,
                                      vf_h, tol);
        } else if (name == "curvature") {
            tol = tol_or(1e-5);
            IntSymMatrix a_ab =
                vf_flags.aa.empty() ? IntSymMatrix::diag({1, 2}) : nct::parse_int_sym(vf_flags.aa);
            rep = nct::verify_curvature(a_ab, samples_or(5), 10, vf_seed, 1e-4, tol);
        } else if (name == "twisted") {
            auto labels = vf_flags.preset.empty() && vf_flags.a_list.empty() && vf_flags.aa.empty()
                              ? nct::presets::line_triple()
                              : vf_flags.labels();
            tol = tol_or(1e-9);
            rep = nct::verify_twisted(labels[0], labels[1], labels[2], samples_or(5), 4, vf_seed,
                                      tol);
        }
        std::cout << report_json(name, rep, tol).dump() << "\n";
        return rep.pass ? 0 : kExitFail;
    }

    if (quiver->parsed()) {
        std::vector<IntSymMatrix> labels;
        if (qv_preset == "sec5") {
            labels = nct::presets::sec5_labels();
        } else if (!qv_preset.empty()) {
            throw std::invalid_argument("unknown preset: " + qv_preset);
        } else {
            labels = nct::enumerate_diag_symmetric(qv_det, qv_bound);
        }
        nct::Quiver q = nct::build_quiver(labels);
        std::string dot = nct::quiver_to_dot(q);
        if (!qv_dot.empty()) {
            std::ofstream(qv_dot) << dot;
        } else if (qv_json.empty()) {
            std::cout << dot;
        }
        if (!qv_json.empty()) std::ofstream(qv_json) << nct::quiver_to_json(q);
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const nct::math_error& e) {
        json err;
        err["error"] = e.code;
        err["detail"] = e.what();
        std::cerr << err.dump() << "\n";
        return kExitMath;
    } catch (const std::exception& e) {
        json err;
        err["error"] = "parse_error";
        err["detail"] = e.what();
        std::cerr << err.dump() << "\n";
        return kExitParse;
    }
}
