#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dedekind/canon.hpp"
#include "dedekind/enumerate.hpp"
#include "dedekind/io.hpp"
#include "dedekind/known_values.hpp"
#include "dedekind/parallel.hpp"
#include "dedekind/rank4.hpp"
#include "dedekind/verify.hpp"

namespace {

using namespace dedekind;
using nlohmann::json;

std::string u128_str(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v != 0) {
        s.push_back(static_cast<char>('0' + int(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

json precision_json(const PrecisionStats& p) {
    json j;
    j["traces"] = p.traces;
    j["max_gamma_bound"] = u128_str(p.max_bound);
    j["max_gamma_entry"] = u128_str(p.max_entry);
    j["wide_recomputes"] = p.wide_recomputes;
    j["bounds_above_2p51"] = p.bound_above_2p51;
    return j;
}

void emit_report(const json& report, const std::string& path) {
    if (path.empty()) {
        std::cerr << report.dump() << "\n";
        return;
    }
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open report file " + path);
    os << report.dump(2) << "\n";
}

Lattice lattice_for(int base, const std::string& lattice_path) {
    if (lattice_path.empty()) return generate_lattice(base);
    Lattice lat = load_lattice(lattice_path);
    if (lat.rank() != base) {
        throw std::runtime_error("lattice file " + lattice_path + " has rank " +
                                 std::to_string(lat.rank()) + ", expected " + std::to_string(base));
    }
    return lat;
}

Interval parse_interval_arg(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw std::runtime_error("expected LO:HI, got " + s);
    Interval iv;
    iv.lo = std::stoull(s.substr(0, colon));
    iv.hi = std::stoull(s.substr(colon + 1));
    return iv;
}

void print_checks(const CheckReport& report) {
    for (const auto& c : report.checks) {
        std::printf("[%s] %-24s %s (%.2fs)\n", c.ok ? " ok " : "FAIL", c.name.c_str(),
                    c.detail.c_str(), c.seconds);
    }
}

int run_compute(const std::string& method, int base, int jobs, const std::string& lattice_path,
                const std::string& checkpoint, const std::string& report_path, int chunk_size,
                std::int64_t max_chunks) {
    const auto t0 = std::chrono::steady_clock::now();
    const Lattice lat = lattice_for(base, lattice_path);

    const bool is_sym = method == "plus4-sym";
    if (!checkpoint.empty() && !is_sym) {
        throw std::runtime_error("--checkpoint is supported for plus4-sym only");
    }

    const bool needs_classes = method == "plus1-classes" || method == "plus2-classes" ||
                               method == "plus3-classes" || method == "plus3-matrix" ||
                               method == "plus3-squared" || method == "plus4-matrix" || is_sym;

    std::vector<IntervalClass> classes;
    if (needs_classes) classes = classify_intervals(lat, jobs);

    json report;
    report["method"] = method;
    report["base"] = base;
    PrecisionStats stats;
    BigCounter value;
    bool complete = true;

    if (method == "plus1") {
        value = d_plus1(lat, Plus1Variant::direct, jobs);
    } else if (method == "plus1-classes") {
        value = d_plus1_classes(classes);
    } else if (method == "plus2") {
        value = d_plus2(lat, Plus2Variant::direct, jobs);
    } else if (method == "plus2-intervals") {
        value = d_plus2(lat, Plus2Variant::intervals, jobs);
    } else if (method == "plus2-classes") {
        value = d_plus2_classes(lat, classes);
    } else if (method == "plus2-matrix") {
        value = d_plus2(lat, Plus2Variant::matrix, jobs);
    } else if (method == "plus3") {
        value = d_plus3(lat, Plus3Variant::direct, jobs);
    } else if (method == "plus3-classes") {
        value = d_plus3_classes(lat, classes, jobs);
    } else if (method == "plus3-matrix") {
        value = d_plus3_matrix(lat, classes, jobs);
    } else if (method == "plus3-squared") {
        value = d_plus3_squared(lat, classes, jobs);
    } else if (method == "plus4-matrix") {
        value = d_plus4_matrix(lat, classes, jobs, &stats);
        report["precision"] = precision_json(stats);
    } else if (method == "plus4-oracle") {
        value = d_plus4_oracle_total(lat, jobs);
    } else if (is_sym) {
        SymOptions opt;
        opt.jobs = jobs;
        opt.chunk_size = chunk_size;
        opt.checkpoint_path = checkpoint;
        opt.max_chunks = max_chunks;
        SymOutcome out = d_plus4_sym_run(lat, classes, opt);
        value = std::move(out.value);
        complete = out.complete;
        report["precision"] = precision_json(out.precision);
        report["chunks_done"] = out.chunks_done;
        report["chunks_total"] = out.chunks_total;
        report["pair_classes"] = out.pair_classes;
        report["pairs_total"] = out.pairs_total;
        if (!checkpoint.empty()) report["checkpoint"] = checkpoint;
    } else {
        throw std::runtime_error("unknown method " + method);
    }

    if (needs_classes) report["interval_classes"] = classes.size();
    report["complete"] = complete;
    report["value"] = complete ? value.to_string() : "";
    if (!complete) report["partial"] = value.to_string();
    report["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    emit_report(report, report_path);

    if (!complete) return 3;
    std::cout << value.to_string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Dedekind number engine: d(n+1)..d(n+4) from the free "
                 "distributive lattice on n generators"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a base lattice file");
    int gen_n = 0;
    std::string gen_out;
    gen->add_option("--n", gen_n, "Base rank (0..6)")->required();
    gen->add_option("--out", gen_out, "Output path")->required();

    // interval-classes
    auto* icls = app.add_subcommand("interval-classes", "Classify intervals up to (anti)isomorphism");
    std::string icls_lattice, icls_out;
    int icls_jobs = 0;
    icls->add_option("--lattice", icls_lattice, "Lattice file")->required();
    icls->add_option("--out", icls_out, "Output JSONL path")->required();
    icls->add_option("--jobs", icls_jobs, "Worker threads")->envname("DEDEKIND_JOBS");

    // pair-classes
    auto* pcls = app.add_subcommand("pair-classes", "Classify pairs of one or all class representatives");
    std::string pcls_lattice, pcls_classes, pcls_out, pcls_interval;
    int pcls_jobs = 0;
    pcls->add_option("--lattice", pcls_lattice, "Lattice file")->required();
    pcls->add_option("--classes", pcls_classes, "Interval class JSONL file")->required();
    pcls->add_option("--out", pcls_out, "Output directory")->required();
    pcls->add_option("--interval", pcls_interval, "Only this representative, as LO:HI");
    pcls->add_option("--jobs", pcls_jobs, "Worker threads")->envname("DEDEKIND_JOBS");

    // compute
    auto* comp = app.add_subcommand("compute", "Run one rank formula");
    std::string comp_method, comp_lattice, comp_checkpoint, comp_report;
    int comp_base = 0, comp_jobs = 0, comp_chunk = 4096;
    std::int64_t comp_max_chunks = -1;
    comp->add_option("--method", comp_method, "One of plus1, plus1-classes, plus2, plus2-intervals, "
                     "plus2-classes, plus2-matrix, plus3, plus3-classes, plus3-matrix, "
                     "plus3-squared, plus4-matrix, plus4-sym, plus4-oracle")
        ->required();
    comp->add_option("--base", comp_base, "Base rank n")->required();
    comp->add_option("--jobs", comp_jobs, "Worker threads")->envname("DEDEKIND_JOBS");
    comp->add_option("--lattice", comp_lattice, "Reuse a lattice file instead of regenerating");
    comp->add_option("--checkpoint", comp_checkpoint, "Checkpoint file (plus4-sym)");
    comp->add_option("--report", comp_report, "Write the JSON report here instead of stderr");
    comp->add_option("--chunk-size", comp_chunk, "Pair classes per checkpoint chunk")
        ->default_val(4096);
    comp->add_option("--max-chunks", comp_max_chunks,
                     "Stop after this many executed chunks (testing interrupts)");

    // verify
    auto* ver = app.add_subcommand("verify", "Cross-check all methods against the reference counts");
    int ver_base = 0, ver_jobs = 0;
    std::string ver_level = "quick";
    ver->add_option("--base", ver_base, "Base rank")->required();
    ver->add_option("--level", ver_level, "quick (base <= 4) or full (base <= 5)")
        ->check(CLI::IsMember({"quick", "full"}));
    ver->add_option("--jobs", ver_jobs, "Worker threads")->envname("DEDEKIND_JOBS");

    // selftest
    auto* self = app.add_subcommand("selftest", "Run the deterministic invariant suite");
    int self_jobs = 0;
    self->add_option("--jobs", self_jobs, "Worker threads")->envname("DEDEKIND_JOBS");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const Lattice lat = generate_lattice(gen_n);
            save_lattice(lat, gen_out);
            std::cout << lat.size() << "\n";
            return 0;
        }
        if (icls->parsed()) {
            const Lattice lat = load_lattice(icls_lattice);
            const auto classes = classify_intervals(lat, icls_jobs);
            save_interval_classes(icls_out, classes);
            std::cout << classes.size() << "\n";
            return 0;
        }
        if (pcls->parsed()) {
            const Lattice lat = load_lattice(pcls_lattice);
            const auto records = load_interval_classes(pcls_classes);
            std::filesystem::create_directories(pcls_out);
            bool selected_found = pcls_interval.empty();
            std::uint64_t total_classes = 0;
            for (const auto& rec : records) {
                const Interval rep{rec.lo, rec.hi};
                if (!pcls_interval.empty()) {
                    const Interval want = parse_interval_arg(pcls_interval);
                    if (!(rep == want)) continue;
                    selected_found = true;
                }
                const IntervalTable tbl = build_interval_table(lat, rep);
                const FormalContext ctx = build_context(tbl);
                const auto pairs = classify_pairs(tbl, ctx, pcls_jobs);
                save_pair_classes(std::filesystem::path(pcls_out) / pair_file_name(rep), pairs);
                total_classes += pairs.size();
            }
            if (!selected_found) {
                throw std::runtime_error("interval " + pcls_interval + " is not a representative in " +
                                         pcls_classes);
            }
            std::cout << total_classes << "\n";
            return 0;
        }
        if (comp->parsed()) {
            return run_compute(comp_method, comp_base, comp_jobs, comp_lattice, comp_checkpoint,
                               comp_report, comp_chunk, comp_max_chunks);
        }
        if (ver->parsed()) {
            const CheckReport report = verify(ver_base, ver_level == "full", ver_jobs);
            print_checks(report);
            return report.all_ok() ? 0 : 1;
        }
        if (self->parsed()) {
            const CheckReport report = selftest(self_jobs);
            print_checks(report);
            return report.all_ok() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
