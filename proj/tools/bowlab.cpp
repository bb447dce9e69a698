// Command-line frontend: brane-diagram operations, fixed-point enumeration,
// stable-envelope matrices, R-matrices, and the reproducible check suite.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "bowlab/fusion.hpp"
#include "bowlab/io.hpp"
#include "bowlab/testgen.hpp"

using namespace bowlab;

namespace {

struct RunConfig {
    std::uint64_t seed = kDefaultSeed;
    double q = 0.3;
    double tol = 1e-9;
    int contexts = 10;
    bool json_out = false;
};

void echo_diagram(const BraneDiagram& D, const RunConfig& cfg) {
    if (cfg.json_out) {
        json j = to_json(D);
        j["text"] = format_diagram(D);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << format_diagram(D) << "\n" << to_json(D).dump() << "\n";
    }
}

EvalContext make_context(int n_a, int n_z, const RunConfig& cfg, const std::string& ctx_file,
                         std::uint64_t index = 0) {
    if (!ctx_file.empty()) {
        std::ifstream in(ctx_file);
        if (!in) throw error("cannot open context file " + ctx_file);
        json j;
        in >> j;
        return context_from_json(j);
    }
    EvalContext ctx = random_context(n_a, n_z, cfg.seed, index);
    ctx.q = cplx(cfg.q, 0.0);
    return ctx;
}

Separation parse_form(const std::string& s) {
    if (s == "separated" || s == "sep") return Separation::Separated;
    if (s == "co-separated" || s == "cosep" || s == "coseparated") return Separation::CoSeparated;
    throw CLI::ValidationError("--form", "must be separated or co-separated");
}

int run_checks(const std::string& which, const RunConfig& cfg, int n, int w,
               const std::string& form_str, int trials) {
    json report;
    report["check"] = which;
    report["seed"] = cfg.seed;
    bool pass = true;

    auto emit_line = [&](const std::string& name, bool ok, double dev) {
        if (!cfg.json_out)
            std::cout << (ok ? "PASS " : "FAIL ") << name << "  (max deviation " << dev << ")\n";
        json item;
        item["name"] = name;
        item["pass"] = ok;
        item["max_dev"] = dev;
        report["items"].push_back(item);
        pass = pass && ok;
    };

    if (which == "mirror") {
        auto rep = mirror_check_tp1(cfg.seed, cfg.contexts, cfg.tol);
        emit_line("mirror tp1 separated/co-separated pair", rep.pass, rep.max_dev);
        auto S = stab_tp1_elliptic(1);
        auto repi = mirror_check(S, S, {2, 1}, {-1, 1}, cfg.seed, cfg.contexts, cfg.tol);
        emit_line("mirror tp1 intro self-pair", repi.pass, repi.max_dev);
    } else if (which == "ns5-fusion") {
        for (int nn = (n > 0 ? n : 2); nn <= (n > 0 ? n : 5); ++nn) {
            auto rep = ns5_point_fusion_check(nn, cfg.seed, cfg.contexts, cfg.tol);
            emit_line("ns5 point fusion n=" + std::to_string(nn) +
                          " sharp=" + std::to_string(rep.sharp),
                      rep.pass, rep.residual);
        }
    } else if (which == "d5-lemmas") {
        auto rep = d5_lemma_chain_check(w > 0 ? w : 5, cfg.seed, cfg.contexts, 1e-10);
        emit_line("d5 lemma chain w<=" + std::to_string(w > 0 ? w : 5) +
                      " signs=" + std::to_string(rep.sign_cases),
                  rep.pass, rep.max_dev);
    } else if (which == "hw-qform") {
        std::mt19937_64 rng(cfg.seed);
        int done = 0, total = trials > 0 ? trials : 500;
        bool ok = true;
        while (done < total) {
            auto D = random_feasible_diagram(rng);
            int site = random_move_site(D, rng);
            if (site < 0) continue;
            auto rep = hw_invariance_check(D, site);
            if (!rep.pass) {
                ok = false;
                if (!cfg.json_out)
                    std::cout << "FAIL at " << format_diagram(D) << " site " << site << ": "
                              << rep.delta.to_string() << "\n";
                break;
            }
            ++done;
        }
        emit_line("hw quadratic form invariance, " + std::to_string(done) + " moves", ok, 0.0);
    } else if (which == "duality") {
        for (int nn = 2; nn <= (n > 0 ? n : 4); ++nn)
            for (auto form : {Separation::Separated, Separation::CoSeparated}) {
                auto rep = duality_check(nn, form, cfg.seed, cfg.contexts, cfg.tol);
                emit_line("duality n=" + std::to_string(nn) +
                              (form == Separation::Separated ? " separated" : " co-separated"),
                          rep.pass, rep.max_dev);
            }
    } else if (which == "ybe") {
        Separation form = form_str.empty() ? Separation::Separated : parse_form(form_str);
        auto rep = ybe_check(form, cfg.seed, cfg.contexts, std::max(cfg.tol, 1e-8));
        emit_line("dynamical YBE on T*P^2", rep.pass, rep.max_dev);
        emit_line("wall path independence", rep.path_dev <= 1e-12, rep.path_dev);
    } else {
        throw CLI::ValidationError("check", "unknown check " + which);
    }

    report["pass"] = pass;
    if (cfg.json_out) std::cout << report.dump() << "\n";
    return pass ? 0 : 1;
}

std::vector<int> parse_chamber(const std::string& s, int n) {
    if (s.empty()) return standard_chamber(n);
    std::vector<int> out;
    int cur = 0;
    bool have = false;
    for (char ch : s) {
        if (ch >= '0' && ch <= '9') {
            cur = cur * 10 + (ch - '0');
            have = true;
        } else if (ch == ',') {
            if (have) out.push_back(cur);
            cur = 0;
            have = false;
        } else {
            throw CLI::ValidationError("--chamber", "expected a comma-separated permutation");
        }
    }
    if (have) out.push_back(cur);
    std::vector<bool> seen(n + 1, false);
    if (static_cast<int>(out.size()) != n) throw CLI::ValidationError("--chamber", "length mismatch");
    for (int v : out) {
        if (v < 1 || v > n || seen[v]) throw CLI::ValidationError("--chamber", "not a permutation");
        seen[v] = true;
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bowlab: brane diagram combinatorics and elliptic stable envelopes"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    RunConfig cfg;
    if (const char* env = std::getenv("BOWLAB_SEED")) cfg.seed = std::strtoull(env, nullptr, 0);
    app.add_option("--seed", cfg.seed, "RNG seed for contexts and randomized checks");
    app.add_option("--q", cfg.q, "nome for evaluation contexts (|q| < 1)")
        ->check(CLI::Range(-0.999, 0.999));
    app.add_option("--tol", cfg.tol, "check tolerance")->check(CLI::Range(1e-300, 1e-3));
    app.add_option("--contexts", cfg.contexts, "number of evaluation contexts per check");
    app.add_flag("--json", cfg.json_out, "machine-readable output");

    std::string text, form_str, chamber_str, ctx_file, family = "tpn", from_str, to_str;
    int n = 0, w = 0, k = 1, trials = 0;
    bool co = false, count_only = false, list_all = false, ties = false, symbolic = false;

    auto* c_parse = app.add_subcommand("parse", "parse a brane diagram");
    c_parse->add_option("diagram", text)->required();

    auto* c_norm = app.add_subcommand("normalize", "HW-normalize a diagram");
    c_norm->add_option("diagram", text)->required();
    c_norm->add_flag("--co-separated", co, "normalize to the co-separated form");

    auto* c_dual = app.add_subcommand("dual", "swap NS5 and D5 branes");
    c_dual->add_option("diagram", text)->required();

    auto* c_charges = app.add_subcommand("charges", "5-brane charge vectors");
    c_charges->add_option("diagram", text)->required();

    auto* c_dim = app.add_subcommand("dim", "complex dimension of the bow variety");
    c_dim->add_option("diagram", text)->required();

    auto* c_strip = app.add_subcommand("strip-zero", "eliminate zero-charge 5-branes");
    c_strip->add_option("diagram", text)->required();

    auto* c_fp = app.add_subcommand("fixed-points", "torus fixed points as BCTs");
    c_fp->add_option("diagram", text)->required();
    c_fp->add_flag("--count", count_only);
    c_fp->add_flag("--list", list_all);
    c_fp->add_flag("--ties", ties);

    auto* c_restrict = app.add_subcommand("restrict", "Chern-root restriction data for T*P^{n-1}");
    c_restrict->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    c_restrict->add_option("--k", k)->check(CLI::PositiveNumber);
    c_restrict->add_option("--form", form_str)->default_val("separated");

    auto* c_stab = app.add_subcommand("stab", "stable-envelope restriction matrix");
    c_stab->add_option("--family", family)->check(CLI::IsMember({"tp1", "tpn"}));
    c_stab->add_option("--n", n)->check(CLI::PositiveNumber);
    c_stab->add_option("--form", form_str)->default_val("separated");
    c_stab->add_option("--chamber", chamber_str, "permutation, e.g. 1,2,3 (tp1: 1 or 2)");
    c_stab->add_option("--eval", ctx_file, "context JSON file");
    c_stab->add_flag("--symbolic", symbolic, "emit expression trees instead of values");

    auto* c_rmat = app.add_subcommand("rmatrix", "geometric R-matrix between two chambers");
    c_rmat->add_option("--n", n)->required()->check(CLI::PositiveNumber);
    c_rmat->add_option("--form", form_str)->default_val("separated");
    c_rmat->add_option("--from", from_str)->required();
    c_rmat->add_option("--to", to_str)->required();
    c_rmat->add_option("--eval", ctx_file);

    auto* c_check = app.add_subcommand("check", "verification suites");
    std::string which;
    c_check->add_option("name", which, "mirror|ns5-fusion|d5-lemmas|hw-qform|duality|ybe")
        ->required();
    c_check->add_option("--n", n);
    c_check->add_option("--w", w);
    c_check->add_option("--form", form_str);
    c_check->add_option("--trials", trials);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_parse || *c_dual || *c_norm || *c_strip) {
            BraneDiagram D = parse_diagram(text);
            if (*c_dual) D = dualize(D);
            if (*c_norm) D = normalize(D, co ? Separation::CoSeparated : Separation::Separated);
            if (*c_strip) D = strip_zero_charge(D);
            echo_diagram(D, cfg);
        } else if (*c_charges) {
            BraneDiagram D = parse_diagram(text);
            auto ch = charges(D);
            if (cfg.json_out)
                std::cout << to_json(ch).dump() << "\n";
            else {
                std::cout << "r =";
                for (int x : ch.r) std::cout << " " << x;
                std::cout << "\nc =";
                for (int x : ch.c) std::cout << " " << x;
                std::cout << "\n" << to_json(ch).dump() << "\n";
            }
        } else if (*c_dim) {
            BraneDiagram D = parse_diagram(text);
            long long d = dimension(D);
            if (d < 0) {
                std::cerr << "invalid diagram: negative dimension (empty bow variety)\n";
                return 1;
            }
            if (cfg.json_out)
                std::cout << json{{"dimension", d}}.dump() << "\n";
            else
                std::cout << d << "\n";
        } else if (*c_fp) {
            BraneDiagram D = parse_diagram(text);
            auto ch = charges(D);
            if (count_only || (!list_all && !ties)) {
                long long cnt = count_bcts(ch.r, ch.c);
                if (cfg.json_out)
                    std::cout << json{{"count", cnt}}.dump() << "\n";
                else
                    std::cout << cnt << "\n";
            } else {
                auto pts = enumerate_bcts(ch.r, ch.c);
                json j = json::array();
                for (const auto& f : pts) {
                    if (ties) {
                        json t = json::array();
                        for (auto [i, jj] : f.ties()) t.push_back({i + 1, jj + 1});
                        j.push_back(t);
                    } else {
                        j.push_back(to_json(f));
                    }
                }
                std::cout << j.dump() << "\n";
            }
        } else if (*c_restrict) {
            Separation form = parse_form(form_str);
            json j;
            j["t"] = to_json(restrict_tpn(n, k, form));
            j["negative_normal"] = to_json(negative_normal_tpn(n, k));
            j["tangent"] = to_json(tangent_tpn(n, k));
            std::cout << j.dump() << "\n";
        } else if (*c_stab) {
            StabMatrix S;
            if (family == "tp1") {
                int cid = chamber_str == "2" ? 2 : 1;
                S = stab_tp1_elliptic(cid);
            } else {
                if (n <= 0) throw CLI::ValidationError("--n", "required for the tpn family");
                Separation form = parse_form(form_str);
                S = stab_tpn(n, form, parse_chamber(chamber_str, n));
            }
            if (symbolic) {
                std::cout << to_json_symbolic(S).dump() << "\n";
            } else {
                EvalContext ctx = make_context(S.n, 2, cfg, ctx_file);
                json j;
                j["context"] = to_json(ctx);
                j["matrix"] = to_json(S.eval(ctx));
                std::cout << j.dump() << "\n";
            }
        } else if (*c_rmat) {
            Separation form = parse_form(form_str);
            EvalContext ctx = make_context(n, 2, cfg, ctx_file);
            auto R = r_matrix(n, form, parse_chamber(from_str, n), parse_chamber(to_str, n), ctx);
            json j;
            j["context"] = to_json(ctx);
            j["rmatrix"] = to_json(R);
            std::cout << j.dump() << "\n";
        } else if (*c_check) {
            return run_checks(which, cfg, n, w, form_str, trials);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
