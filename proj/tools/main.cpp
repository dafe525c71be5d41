#include <complex>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "singtheta/binary.hpp"
#include "singtheta/errors.hpp"
#include "singtheta/kitaoka.hpp"
#include "singtheta/singular.hpp"
#include "singtheta/theta.hpp"
#include "singtheta/verify.hpp"

namespace {

using namespace singtheta;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitBound = 3;

HalfIntegralForm parse_form(const std::string& literal) {
    json j;
    try {
        j = json::parse(literal);
    } catch (const json::exception& e) {
        throw input_error(std::string("bad matrix literal: ") + e.what());
    }
    std::vector<std::vector<i64>> rows;
    for (const auto& r : j) {
        std::vector<i64> row;
        for (const auto& v : r) row.push_back(v.get<i64>());
        rows.push_back(std::move(row));
    }
    return HalfIntegralForm::from_rows(rows);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw input_error("cannot open output file " + out_path);
    os << text;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw input_error("cannot open input file " + path);
    return std::string(std::istreambuf_iterator<char>(is), {});
}

void require_prime(i64 p) {
    if (p < 2) throw input_error("p must be a prime");
    for (i64 q = 2; q * q <= p; ++q)
        if (p % q == 0) throw input_error(std::to_string(p) + " is not prime");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact theta expansions and mod p^m singular decompositions"};
    app.require_subcommand(1);

    // theta
    std::string theta_form, theta_out;
    int theta_degree = 1;
    i64 theta_bound = 10;
    auto* cmd_theta = app.add_subcommand("theta", "truncated theta expansion of a form");
    cmd_theta->add_option("--form", theta_form, "doubled matrix, e.g. [[2,1],[1,4]]")->required();
    cmd_theta->add_option("--degree", theta_degree, "degree of the expansion")->required();
    cmd_theta->add_option("--bound", theta_bound, "trace bound")->required();
    cmd_theta->add_option("--out", theta_out, "output file (default stdout)");

    // detect
    std::string detect_file, detect_out;
    i64 detect_p = 0;
    int detect_m = 1;
    auto* cmd_detect = app.add_subcommand("detect", "mod p^m singularity verdict");
    cmd_detect->add_option("--file", detect_file, "expansion JSON file")->required();
    cmd_detect->add_option("--p", detect_p, "prime")->required();
    cmd_detect->add_option("--m", detect_m, "power of p");
    cmd_detect->add_option("--out", detect_out, "output file (default stdout)");

    // decompose
    std::string dec_file, dec_out;
    i64 dec_p = 0, dec_det = 0, dec_trace = -1;
    int dec_m = 1;
    bool dec_bound_auto = false;
    auto* cmd_dec = app.add_subcommand("decompose", "theta decomposition mod p^m");
    cmd_dec->add_option("--file", dec_file, "expansion JSON file")->required();
    cmd_dec->add_option("--p", dec_p, "prime")->required();
    cmd_dec->add_option("--m", dec_m, "power of p");
    cmd_dec->add_option("--det-bound", dec_det, "determinant bound for classes")->required();
    cmd_dec->add_option("--trace-bound", dec_trace,
                        "bound for the residual congruence (default: file bound)");
    cmd_dec->add_flag("--bound-auto", dec_bound_auto,
                      "check that the file bound covers every class representative");
    cmd_dec->add_option("--out", dec_out, "output file (default stdout)");

    // classes
    i64 cls_disc = 0, cls_level_p = 0;
    std::string cls_out;
    auto* cmd_cls = app.add_subcommand("classes", "binary form class representatives");
    auto* opt_disc = cmd_cls->add_option("--disc", cls_disc, "negative discriminant");
    auto* opt_lp = cmd_cls->add_option("--level-p", cls_level_p, "prime level");
    cmd_cls->add_option("--out", cls_out, "output file (default stdout)");

    // verify
    std::string ver_suite;
    std::uint64_t ver_seed = 42;
    i64 ver_p = 0, ver_dmin = -200, ver_bound = 500;
    auto* cmd_ver = app.add_subcommand("verify", "run a named verification suite");
    cmd_ver->add_option("suite", ver_suite,
                        "epsilon|roundtrip|freitag|decompose|phi|weber|uv|independence|"
                        "kitaoka|singularity|weight|all")
        ->required();
    cmd_ver->add_option("--seed", ver_seed, "seed for randomized suites");
    cmd_ver->add_option("--p", ver_p, "restrict to one prime where applicable");
    cmd_ver->add_option("--dmin", ver_dmin, "most negative discriminant (weber)");
    cmd_ver->add_option("--bound", ver_bound, "prime bound (weber)");

    // kitaoka
    std::string kit_form, kit_out;
    i64 kit_d = 0;
    int kit_samples = 5;
    double kit_tol = 1e-8;
    std::uint64_t kit_seed = 42;
    auto* cmd_kit = app.add_subcommand("kitaoka", "numeric theta transformation at a cusp");
    cmd_kit->alias("verify-kitaoka");
    cmd_kit->add_option("--form", kit_form, "doubled matrix of S")->required();
    cmd_kit->add_option("--d", kit_d, "divisor of level(S) with gcd(d, N/d)=1")->required();
    cmd_kit->add_option("--samples", kit_samples, "number of sample points");
    cmd_kit->add_option("--tol", kit_tol, "deviation tolerance");
    cmd_kit->add_option("--seed", kit_seed, "sample seed");
    cmd_kit->add_option("--out", kit_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInput;
    }

    try {
        if (cmd_theta->parsed()) {
            HalfIntegralForm s = parse_form(theta_form);
            emit(expansion_to_json(theta_expansion(s, theta_degree, theta_bound)), theta_out);
            return kExitOk;
        }
        if (cmd_detect->parsed()) {
            require_prime(detect_p);
            FourierExpansion f = expansion_from_json(slurp(detect_file));
            SingularityVerdict v = detect_singularity(f, detect_p, detect_m);
            json j;
            j["p"] = v.p;
            j["m"] = v.m;
            j["trace_bound"] = v.trace_bound;
            switch (v.state) {
                case SingularityVerdict::State::Zero:
                    j["state"] = "zero";
                    j["p_rank"] = nullptr;
                    break;
                case SingularityVerdict::State::Singular: {
                    j["state"] = "singular";
                    j["p_rank"] = *v.p_rank;
                    if (v.witness) {
                        json rows = json::array();
                        for (int i = 0; i < v.witness->size(); ++i) {
                            json row = json::array();
                            for (int k = 0; k < v.witness->size(); ++k)
                                row.push_back(v.witness->doubled(i, k));
                            rows.push_back(std::move(row));
                        }
                        j["witness"] = std::move(rows);
                    }
                    break;
                }
                case SingularityVerdict::State::NotSingular:
                    j["state"] = "not_singular";
                    j["p_rank"] = nullptr;
                    break;
            }
            emit(j.dump(2) + "\n", detect_out);
            return kExitOk;
        }
        if (cmd_dec->parsed()) {
            require_prime(dec_p);
            FourierExpansion f = expansion_from_json(slurp(dec_file));
            mpq_class det_bound(static_cast<long>(dec_det));
            if (dec_bound_auto) {
                SingularityVerdict v = detect_singularity(f, dec_p, dec_m);
                if (v.state == SingularityVerdict::State::Singular && *v.p_rank >= 1) {
                    i64 need = min_trace_for_det_bound(*v.p_rank, det_bound);
                    if (f.trace_bound() < need)
                        throw bound_error("input bound " + std::to_string(f.trace_bound()) +
                                          " below the minimal sound bound " +
                                          std::to_string(need) + " for det bound " +
                                          std::to_string(dec_det));
                }
            }
            i64 trace_bound = dec_trace >= 0 ? dec_trace : f.trace_bound();
            DecompositionReport rep = freitag_decompose(f, dec_p, dec_m, det_bound, trace_bound);
            emit(report_to_json(rep), dec_out);
            return rep.residual_congruent ? kExitOk : kExitVerifyFail;
        }
        if (cmd_cls->parsed()) {
            json j;
            std::vector<BinaryForm> reps;
            if (*opt_disc && *opt_lp)
                throw input_error("give either --disc or --level-p, not both");
            if (*opt_disc) {
                reps = class_reps(cls_disc);
                j["discriminant"] = cls_disc;
            } else if (*opt_lp) {
                require_prime(cls_level_p);
                LevelPReps lp = level_p_reps(cls_level_p);
                reps = lp.reps;
                j["p"] = cls_level_p;
                if (!lp.warning.empty()) j["warning"] = lp.warning;
            } else {
                throw input_error("classes needs --disc or --level-p");
            }
            j["count"] = reps.size();
            json forms = json::array();
            for (const auto& f : reps) forms.push_back({f.a, f.b, f.c});
            j["forms"] = std::move(forms);
            emit(j.dump(2) + "\n", cls_out);
            return kExitOk;
        }
        if (cmd_ver->parsed()) {
            std::vector<SuiteResult> results;
            auto one = [&](SuiteResult r) { results.push_back(std::move(r)); };
            if (ver_suite == "epsilon") one(suite_epsilon(100, {5, 7, 11, 13}));
            else if (ver_suite == "roundtrip") one(suite_roundtrip(100, 30, ver_seed));
            else if (ver_suite == "freitag") one(suite_freitag(12, ver_seed));
            else if (ver_suite == "decompose") one(suite_decompose(ver_seed));
            else if (ver_suite == "phi") one(suite_phi());
            else if (ver_suite == "weber") one(suite_weber(ver_dmin, ver_bound));
            else if (ver_suite == "uv") one(suite_uv(ver_p ? std::vector<i64>{ver_p}
                                                          : std::vector<i64>{3, 7}, 2, 2, 50));
            else if (ver_suite == "independence")
                one(suite_independence(ver_p ? std::vector<i64>{ver_p}
                                             : std::vector<i64>{7, 23, 31}, 200));
            else if (ver_suite == "kitaoka")
                one(suite_kitaoka(ver_p ? std::vector<i64>{ver_p}
                                        : std::vector<i64>{7, 11, 23}, 1e-8, 5, ver_seed));
            else if (ver_suite == "singularity") one(suite_singularity(6));
            else if (ver_suite == "weight") one(suite_weight());
            else if (ver_suite == "all") results = run_all_suites(ver_seed);
            else throw input_error("unknown suite " + ver_suite);
            bool all_ok = true;
            for (const auto& r : results) {
                all_ok = all_ok && r.passed;
                std::cout << (r.passed ? "PASS " : "FAIL ") << r.name;
                if (!r.detail.empty()) std::cout << ": " << r.detail;
                std::cout << "\n";
            }
            return all_ok ? kExitOk : kExitVerifyFail;
        }
        if (cmd_kit->parsed()) {
            HalfIntegralForm s = parse_form(kit_form);
            CuspMatrix m = CuspMatrix::for_level_divisor(s.level(), kit_d);
            std::mt19937_64 rng(kit_seed);
            std::uniform_real_distribution<double> re(-0.4, 0.4), im(0.5, 2.0);
            std::vector<std::complex<double>> zs;
            for (int i = 0; i < kit_samples; ++i) zs.emplace_back(re(rng), im(rng));
            KitaokaResult res = verify_kitaoka_deg1(s, m, s.size() / 2, zs);
            LatticeBasis partner = kitaoka_partner(s, kit_d);
            LocalCheck chk = partner_local_check(s, kit_d, partner);
            json j;
            j["kappa_re"] = res.kappa.real();
            j["kappa_im"] = res.kappa.imag();
            j["max_deviation"] = res.max_deviation;
            j["samples_used"] = res.samples_used;
            j["cusp"] = {{"a", m.a}, {"b", m.b}, {"c", m.c}, {"d", m.d}};
            j["local_check"] = chk.ok;
            emit(j.dump(2) + "\n", kit_out);
            return (chk.ok && res.max_deviation < kit_tol) ? kExitOk : kExitVerifyFail;
        }
    } catch (const bound_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBound;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
