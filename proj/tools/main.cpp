// main.cpp — qdistill command-line tool.
//
// Subcommands: gen, distill, kpos, sweep, check.
// Exit codes: 0 violation found, 1 no violation, 2 input error, 3 I/O error.
// Every run prints one JSON report to stdout; all stochastic numerics are
// fully determined by --seed (the "results" object is reproducible).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qdistill/distill.hpp"
#include "qdistill/io.hpp"
#include "qdistill/rng.hpp"
#include "qdistill/version.hpp"

namespace {

using nlohmann::json;
using namespace qdistill;

constexpr int kExitViolation = 0;
constexpr int kExitNoViolation = 1;
constexpr int kExitInputError = 2;
constexpr int kExitIoError = 3;

struct Clock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start).count();
    }
};

json base_report(const std::string& command, std::uint64_t seed) {
    json doc;
    doc["schema"] = 1;
    doc["tool"] = "qdistill";
    doc["version"] = kVersion;
    doc["command"] = command;
    doc["seed"] = seed;
    return doc;
}

void check_finite(const json& node) {
    if (node.is_number_float() && !std::isfinite(node.get<double>())) {
        throw Error("report contains a non-finite number");
    }
    if (node.is_object() || node.is_array()) {
        for (const auto& child : node) check_finite(child);
    }
}

void emit(json& doc, const Clock& clock) {
    doc["timing_ms"] = clock.ms();
    check_finite(doc["results"]);
    std::cout << doc.dump(1) << std::endl;
}

json verdict_json(const Verdict& v) {
    json out;
    out["kind"] = (v.kind == VerdictKind::ViolationFound) ? "violation" : "none";
    out["value"] = v.value;
    out["copies"] = v.copies;
    out["schmidt_bound"] = v.schmidt_bound;
    out["near_zero_warning"] = v.near_zero_warning;
    out["certified"] = (v.kind == VerdictKind::ViolationFound);
    if (v.certificate) {
        const PureVector& c = *v.certificate;
        json cert;
        cert["dims"] = {c.dim_a, c.dim_b};
        cert["schmidt_rank"] = schmidt_rank(c);
        const SchmidtForm f = schmidt(c);
        json coeffs = json::array();
        for (long k = 0; k < f.coefficients.size(); ++k)
            coeffs.push_back(f.coefficients(k));
        cert["schmidt_coefficients"] = std::move(coeffs);
        json amps = json::array();
        for (long i = 0; i < c.amp.size(); ++i)
            amps.push_back(json::array({c.amp(i).real(), c.amp(i).imag()}));
        cert["amplitudes"] = std::move(amps);
        out["certificate"] = std::move(cert);
    }
    return out;
}

json params_json(const SearchParams& p) {
    return {{"restarts", p.restarts},
            {"max_iters", p.max_iters},
            {"conv_tol", p.conv_tol},
            {"neg_tol", p.neg_tol}};
}

json prepass_json(const PrepassResult& pre) {
    json out;
    out["applicable"] = pre.applicable;
    out["violation"] = pre.violation;
    json entries = json::array();
    for (const PrepassEntry& e : pre.entries) {
        entries.push_back({{"map", e.map_name},
                           {"side", std::string(1, e.side)},
                           {"value", e.value}});
    }
    out["values"] = std::move(entries);
    if (pre.certificate) out["certificate_value"] = pre.certificate_value;
    return out;
}

json input_digest(const std::string& path, const BipartiteOperator& op) {
    json out;
    out["path"] = path;
    out["dims"] = {op.dim_a, op.dim_b};
    out["trace"] = op.trace_real();
    out["hermitian"] = op.is_hermitian();
    out["min_pt_eigenvalue"] =
        partial_transpose(op, Subsystem::B).min_eigenvalue();
    return out;
}

DensityMatrix build_family(const std::string& family, int d, int db, int rank,
                           double alpha, double fidelity, std::uint64_t seed) {
    if (family == "werner") return werner(d, alpha);
    if (family == "isotropic") return isotropic(d, fidelity);
    if (family == "maxent") return DensityMatrix(max_entangled(d));
    if (family == "random") {
        const int b = (db > 0) ? db : d;
        const int r = (rank > 0) ? rank : d * b;
        return random_density(d, b, r, seed);
    }
    throw BadParameter("unknown family: " + family);
}

double named_witness_trace(NamedMapTag t, const DensityMatrix& rho) {
    return (named_witness(t, rho.op.dim_a).mat * rho.op.mat).trace().real();
}

// ----------------------------- subcommands ---------------------------------

int cmd_gen(const std::string& family, int d, int db, int rank, double alpha,
            double fidelity, std::uint64_t seed, const std::string& out_path) {
    Clock clock;
    const DensityMatrix rho = build_family(family, d, db, rank, alpha, fidelity, seed);
    save_state(out_path, rho.op);

    json doc = base_report("gen", seed);
    doc["params"] = {{"family", family}, {"d", d}};
    if (family == "werner") doc["params"]["alpha"] = alpha;
    if (family == "isotropic") doc["params"]["fidelity"] = fidelity;
    if (family == "random") {
        doc["params"]["db"] = (db > 0) ? db : d;
        doc["params"]["rank"] = (rank > 0) ? rank : rho.op.side();
    }
    doc["results"] = {{"path", out_path},
                      {"dims", {rho.op.dim_a, rho.op.dim_b}},
                      {"trace", rho.op.trace_real()}};
    emit(doc, clock);
    return 0;
}

int cmd_distill(const std::string& in_path, int copies, const SearchParams& sp,
                bool prepass_on, long cap) {
    Clock clock;
    const DensityMatrix rho{load_state(in_path)};

    json doc = base_report("distill", sp.seed);
    doc["params"] = params_json(sp);
    doc["params"]["copies"] = copies;
    doc["params"]["prepass"] = prepass_on;
    doc["input"] = input_digest(in_path, rho.op);

    json results;
    std::optional<Verdict> verdict;
    std::string source = "search";

    if (prepass_on) {
        const PrepassResult pre = named_map_prepass(rho, sp.neg_tol);
        results["prepass"] = prepass_json(pre);
        if (pre.certificate) {
            if (copies == 1) {
                Verdict v;
                v.kind = VerdictKind::ViolationFound;
                v.value = pre.certificate_value;
                v.certificate = pre.certificate;
                v.copies = 1;
                v.params = sp;
                verdict = std::move(v);
                source = "prepass";
            } else {
                const LiftedCertificate lifted =
                    lift_certificate(rho, *pre.certificate, copies, cap);
                if (lifted.value < -sp.neg_tol) {
                    Verdict v;
                    v.kind = VerdictKind::ViolationFound;
                    v.value = lifted.value;
                    v.certificate = lifted.vector;
                    v.copies = copies;
                    v.params = sp;
                    verdict = std::move(v);
                    source = "prepass+lift";
                }
            }
        }
    }
    if (!verdict) {
        verdict = n_distillable(rho, copies, sp, cap);
        source = "search";
    }

    results["verdict"] = verdict_json(*verdict);
    results["verdict"]["source"] = source;
    doc["results"] = std::move(results);
    emit(doc, clock);

    std::cerr << "distill: " << (verdict->kind == VerdictKind::ViolationFound
                                     ? "violation found"
                                     : "no violation found (heuristic)")
              << ", value " << verdict->value << ", copies " << copies << "\n";
    return verdict->kind == VerdictKind::ViolationFound ? kExitViolation
                                                        : kExitNoViolation;
}

int cmd_kpos(const std::string& map_name, int d, const std::string& choi_path,
             const std::string& state_path, int k, const SearchParams& sp,
             const std::string& export_path) {
    Clock clock;
    json doc = base_report("kpos", sp.seed);
    doc["params"] = params_json(sp);
    doc["params"]["k"] = k;

    const int sources = int(!map_name.empty()) + int(!choi_path.empty()) +
                        int(!state_path.empty());
    if (sources != 1) {
        throw BadParameter("kpos: give exactly one of --map, --choi, --from-state");
    }

    Verdict verdict;
    if (!map_name.empty()) {
        NamedMapTag tag;
        if (map_name == "lambda1") tag = NamedMapTag::Lambda1;
        else if (map_name == "lambda2") tag = NamedMapTag::Lambda2;
        else if (map_name == "lambda3") tag = NamedMapTag::Lambda3;
        else if (map_name == "lambda4") tag = NamedMapTag::Lambda4;
        else if (map_name == "lambda5") tag = NamedMapTag::Lambda5;
        else throw BadParameter("kpos: unknown map " + map_name);
        const NamedMap nm = named_map(tag, d);
        doc["params"]["map"] = map_name;
        doc["params"]["d"] = d;
        if (!export_path.empty()) {
            save_choi(export_path, jamiolkowski_operator(nm.map, d), d);
        }
        verdict = is_k_positive(nm.map, k, sp);
    } else if (!choi_path.empty()) {
        const ChoiFile f = load_choi(choi_path);
        doc["params"]["choi"] = choi_path;
        if (f.jamiolkowski_scale > 0) {
            doc["params"]["jamiolkowski_scale"] = f.jamiolkowski_scale;
        }
        verdict = rank_constrained_min(f.op, k, sp);
    } else {
        const DensityMatrix rho{load_state(state_path)};
        doc["input"] = input_digest(state_path, rho.op);
        verdict = is_k_positive(s_map_from_state(rho).transpose_compose_s, k, sp);
    }

    doc["results"] = {{"verdict", verdict_json(verdict)}};
    emit(doc, clock);

    std::cerr << "kpos: " << (verdict.kind == VerdictKind::ViolationFound
                                  ? "not " + std::to_string(k) + "-positive (certified)"
                                  : "no violation found (heuristic)")
              << ", value " << verdict.value << "\n";
    return verdict.kind == VerdictKind::ViolationFound ? kExitViolation
                                                       : kExitNoViolation;
}

int cmd_sweep(const std::string& family, int d, double from, double to,
              int steps, int copies, const SearchParams& sp,
              const std::string& out_csv, long cap) {
    Clock clock;
    if (steps < 2) throw BadParameter("sweep: steps must be >= 2");
    if (family != "werner" && family != "isotropic") {
        throw BadParameter("sweep: family must be werner or isotropic");
    }

    std::string csv = "param,min_pt_eig,reduction_value,rank2_min_value,verdict\n";
    bool any_violation = false;
    json rows = json::array();
    for (int i = 0; i < steps; ++i) {
        const double param = from + (to - from) * i / (steps - 1);
        const DensityMatrix rho = (family == "werner") ? werner(d, param)
                                                       : isotropic(d, param);
        const double min_pt =
            partial_transpose(rho.op, Subsystem::B).min_eigenvalue();
        const double reduction = named_witness_trace(NamedMapTag::Lambda1, rho);

        SearchParams row_params = sp;
        row_params.seed = mix_seed(sp.seed, static_cast<std::uint64_t>(i));
        const Verdict v = n_distillable(rho, copies, row_params, cap);
        const bool hit = v.kind == VerdictKind::ViolationFound;
        any_violation = any_violation || hit;

        char line[256];
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%s\n", param,
                      min_pt, reduction, v.value, hit ? "violation" : "none");
        csv += line;
        rows.push_back({{"param", param},
                        {"min_pt_eig", min_pt},
                        {"reduction_value", reduction},
                        {"rank2_min_value", v.value},
                        {"verdict", hit ? "violation" : "none"}});
    }

    if (!out_csv.empty()) {
        std::ofstream out(out_csv);
        if (!out) throw IoError("sweep: cannot open " + out_csv);
        out << csv;
        if (!out) throw IoError("sweep: write failed: " + out_csv);
    } else {
        std::cerr << csv;
    }

    json doc = base_report("sweep", sp.seed);
    doc["params"] = params_json(sp);
    doc["params"]["family"] = family;
    doc["params"]["d"] = d;
    doc["params"]["from"] = from;
    doc["params"]["to"] = to;
    doc["params"]["steps"] = steps;
    doc["params"]["copies"] = copies;
    if (!out_csv.empty()) doc["params"]["out"] = out_csv;
    doc["results"] = {{"rows", std::move(rows)}, {"any_violation", any_violation}};
    emit(doc, clock);
    return any_violation ? kExitViolation : kExitNoViolation;
}

int cmd_check(const std::string& in_path) {
    Clock clock;
    const BipartiteOperator op = load_state(in_path);

    json doc = base_report("check", 0);
    json results;
    results["dims"] = {op.dim_a, op.dim_b};
    results["hermitian"] = op.is_hermitian();
    results["trace"] = op.trace_real();

    std::string invariant_failure;
    std::optional<DensityMatrix> rho;
    try {
        rho.emplace(op);
    } catch (const Error& e) {
        invariant_failure = e.what();
    }
    if (!invariant_failure.empty()) {
        results["invariant_failed"] = invariant_failure;
        doc["results"] = std::move(results);
        emit(doc, clock);
        std::cerr << "check: invalid state: " << invariant_failure << "\n";
        return kExitInputError;
    }

    const double min_eig = op.min_eigenvalue();
    const double min_pt = partial_transpose(op, Subsystem::B).min_eigenvalue();
    results["min_eigenvalue"] = min_eig;
    results["min_pt_eigenvalue"] = min_pt;
    results["npt"] = (min_pt < -1e-9);

    bool witness_hit = false;
    if (op.dim_a == op.dim_b) {
        const PrepassResult pre = named_map_prepass(*rho);
        results["named_witnesses"] = prepass_json(pre);
        witness_hit = pre.violation;
    }
    doc["results"] = std::move(results);
    emit(doc, clock);

    const bool violation = (min_pt < -1e-9) || witness_hit;
    std::cerr << "check: " << (violation ? "violation indicators present"
                                         : "no violation indicators") << "\n";
    return violation ? kExitViolation : kExitNoViolation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qdistill — distillability and map-positivity toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a state file");
    std::string gen_family, gen_out;
    int gen_d = 3, gen_db = 0, gen_rank = 0;
    double gen_alpha = 0.0, gen_fidelity = 0.0;
    std::uint64_t gen_seed = 1;
    gen->add_option("--family", gen_family, "werner|isotropic|maxent|random")
        ->required();
    gen->add_option("--d", gen_d, "A-side dimension (default 3)");
    gen->add_option("--db", gen_db, "B-side dimension (random family)");
    gen->add_option("--rank", gen_rank, "rank (random family)");
    gen->add_option("--alpha", gen_alpha, "Werner parameter in [-1,1]");
    gen->add_option("--fidelity", gen_fidelity, "isotropic fidelity in [0,1]");
    gen->add_option("--seed", gen_seed, "RNG seed (random family)");
    gen->add_option("--out", gen_out, "output path")->required();

    // shared search options
    const auto add_search_options = [](CLI::App* cmd, SearchParams& sp) {
        cmd->add_option("--restarts", sp.restarts, "random restarts (default 64)");
        cmd->add_option("--max-iters", sp.max_iters, "sweeps per restart (default 200)");
        cmd->add_option("--conv-tol", sp.conv_tol, "convergence tolerance");
        cmd->add_option("--neg-tol", sp.neg_tol, "violation threshold");
        cmd->add_option("--seed", sp.seed, "master RNG seed (default 1)");
    };

    // distill
    auto* distill = app.add_subcommand("distill", "decide n-copy distillability");
    std::string distill_in;
    int distill_copies = 1;
    long distill_cap = 4096;
    bool distill_no_prepass = false;
    SearchParams distill_sp;
    distill->add_option("--in", distill_in, "input .qstate.json")->required();
    distill->add_option("--copies", distill_copies, "number of copies (default 1)");
    distill->add_option("--cap", distill_cap, "tensor-power dimension cap (default 4096)");
    distill->add_flag("--no-prepass", distill_no_prepass,
                      "skip the named-witness pre-pass");
    add_search_options(distill, distill_sp);

    // kpos
    auto* kpos = app.add_subcommand("kpos", "test k-positivity of a map");
    std::string kpos_map, kpos_choi, kpos_state, kpos_export;
    int kpos_d = 3, kpos_k = 2;
    SearchParams kpos_sp;
    kpos->add_option("--map", kpos_map, "named map: lambda1..lambda5");
    kpos->add_option("--d", kpos_d, "dimension for --map (default 3)");
    kpos->add_option("--choi", kpos_choi, "operator file with jamiolkowski_scale tag");
    kpos->add_option("--from-state", kpos_state,
                     "build transpose∘S from a state file");
    kpos->add_option("--k", kpos_k, "positivity order (default 2)");
    kpos->add_option("--export-choi", kpos_export,
                     "also write the named map's operator here");
    add_search_options(kpos, kpos_sp);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "scan a family parameter, emit CSV");
    std::string sweep_family = "werner", sweep_out;
    int sweep_d = 3, sweep_steps = 11, sweep_copies = 1;
    long sweep_cap = 4096;
    double sweep_from = -1.0, sweep_to = 0.0;
    SearchParams sweep_sp;
    sweep->add_option("--family", sweep_family, "werner|isotropic")->required();
    sweep->add_option("--d", sweep_d, "dimension (default 3)");
    sweep->add_option("--from", sweep_from, "first parameter value")->required();
    sweep->add_option("--to", sweep_to, "last parameter value")->required();
    sweep->add_option("--steps", sweep_steps, "grid points (default 11)");
    sweep->add_option("--copies", sweep_copies, "copies per decision (default 1)");
    sweep->add_option("--cap", sweep_cap, "tensor-power dimension cap");
    sweep->add_option("--out", sweep_out, "CSV output path (stderr if omitted)");
    add_search_options(sweep, sweep_sp);

    // check
    auto* check = app.add_subcommand("check", "validate a state file and report invariants");
    std::string check_in;
    check->add_option("--in", check_in, "input .qstate.json")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    }

    try {
        if (gen->parsed()) {
            return cmd_gen(gen_family, gen_d, gen_db, gen_rank, gen_alpha,
                           gen_fidelity, gen_seed, gen_out);
        }
        if (distill->parsed()) {
            return cmd_distill(distill_in, distill_copies, distill_sp,
                               !distill_no_prepass, distill_cap);
        }
        if (kpos->parsed()) {
            return cmd_kpos(kpos_map, kpos_d, kpos_choi, kpos_state, kpos_k,
                            kpos_sp, kpos_export);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_family, sweep_d, sweep_from, sweep_to,
                             sweep_steps, sweep_copies, sweep_sp, sweep_out,
                             sweep_cap);
        }
        if (check->parsed()) {
            return cmd_check(check_in);
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
