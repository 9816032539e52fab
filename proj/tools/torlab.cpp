// Experiment runner: one experiment per invocation, seeded and reproducible.
// Subcommands mirror the experiment kinds; a config file, when given, takes
// precedence over inline flags.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "torlab/errors.hpp"
#include "torlab/runner.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    uint64_t seed = 0;
    std::string out_path;
    std::string format = "csv";
    unsigned threads = 0;
    bool table = false;

    // inline experiment inputs
    std::vector<std::string> point;
    std::string curve;
    std::string family_doc;
    std::vector<std::string> members;     // "a=1,b=2" per member
    std::vector<double> thresholds;
    std::vector<std::string> corpus_pts;  // "1/2;zeta(6)" per point
    long samples = 10000;
    long modes = 5;
    long u_power = 2;
    long max_numerator = 10;
    long max_denominator = 10;
    long max_order = 60;
};

nlohmann::ordered_json inline_inputs(const std::string& kind, const CliOptions& o) {
    nlohmann::ordered_json in;
    if (!o.point.empty()) in["point"] = o.point;
    if (!o.curve.empty()) in["curve"] = o.curve;
    if (!o.family_doc.empty()) in["family_document"] = o.family_doc;
    if (!o.members.empty()) {
        nlohmann::ordered_json ms = nlohmann::ordered_json::array();
        for (const auto& m : o.members) {
            nlohmann::ordered_json mj;
            std::stringstream ss(m);
            std::string kv;
            while (std::getline(ss, kv, ',')) {
                auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw torlab::config_error("member must look like a=1,b=2: " + m);
                mj[kv.substr(0, eq)] = kv.substr(eq + 1);
            }
            ms.push_back(std::move(mj));
        }
        in["members"] = std::move(ms);
    }
    if (!o.thresholds.empty()) in["thresholds"] = o.thresholds;
    if (!o.corpus_pts.empty()) {
        nlohmann::ordered_json ps = nlohmann::ordered_json::array();
        for (const auto& p : o.corpus_pts) {
            nlohmann::ordered_json pj = nlohmann::ordered_json::array();
            std::stringstream ss(p);
            std::string c;
            while (std::getline(ss, c, ';')) pj.push_back(c);
            ps.push_back(std::move(pj));
        }
        in["corpus_points"] = std::move(ps);
    }
    if (kind == "equidist") {
        in["samples"] = o.samples;
        in["modes"] = o.modes;
    }
    if (kind == "orbit") in["modes"] = o.modes;
    if (kind == "pin") in["u"] = o.u_power;
    if (kind == "scan") {
        nlohmann::ordered_json cj;
        cj["max_numerator"] = o.max_numerator;
        cj["max_denominator"] = o.max_denominator;
        cj["max_order"] = o.max_order;
        in["corpus"] = std::move(cj);
    }
    return in;
}

int run(const std::string& kind, const CliOptions& o) {
    torlab::ExperimentConfig cfg;
    if (!o.config_path.empty()) {
        std::ifstream f(o.config_path);
        if (!f) throw torlab::config_error("cannot open config file " + o.config_path);
        nlohmann::ordered_json j;
        try {
            f >> j;
        } catch (const std::exception& e) {
            throw torlab::config_error(std::string("config parse: ") + e.what());
        }
        cfg = torlab::ExperimentConfig::from_json(j);
    } else {
        cfg.kind = torlab::experiment_kind_from_name(kind);
        cfg.inputs = inline_inputs(kind, o);
        cfg.seed = o.seed;
        cfg.out_path = o.out_path;
        cfg.format = o.format == "jsonl" ? torlab::TableFormat::Jsonl : torlab::TableFormat::Csv;
        cfg.threads = o.threads;
    }

    torlab::RunRecord rec = torlab::run_experiment(cfg);
    std::string record_text = rec.to_json().dump(2) + "\n";
    if (!cfg.out_path.empty()) {
        std::ofstream out(cfg.out_path);
        if (!out) throw torlab::config_error("cannot write " + cfg.out_path);
        out << record_text;
    } else if (!o.table) {
        std::cout << record_text;
    }
    if (o.table) std::cout << torlab::emit_table(rec, cfg.format);
    for (const auto& w : rec.warnings) std::cerr << "warning: " << w << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"toric heights and equidistribution experiments"};
    app.require_subcommand(1);

    CliOptions o;
    const char* kinds[] = {"height", "orbit", "equidist", "stabilizer", "scan", "pin"};
    for (const char* kind : kinds) {
        auto* sub = app.add_subcommand(kind);
        sub->add_option("--config", o.config_path, "JSON config file (overrides inline flags)");
        sub->add_option("--seed", o.seed, "RNG seed (default 0)");
        sub->add_option("--out", o.out_path, "write the run record to this path");
        sub->add_option("--format", o.format, "table format: csv|jsonl")
            ->check(CLI::IsMember({"csv", "jsonl"}));
        sub->add_option("--threads", o.threads, "worker threads (default: all)");
        sub->add_flag("--table", o.table, "print the tabular payload to stdout");
        sub->add_option("--point", o.point, "point coordinates, e.g. --point 2 1/2");
        sub->add_option("--curve", o.curve, "curve as a polynomial, e.g. 'x + y - 1'");
        sub->add_option("--family", o.family_doc, "support-family document text");
        sub->add_option("--member", o.members, "family member, e.g. a=1,b=-1 (repeatable)");
        sub->add_option("--threshold", o.thresholds, "height threshold grid (repeatable)");
        sub->add_option("--corpus-point", o.corpus_pts,
                        "pinning corpus point, coordinates ;-separated (repeatable)");
        sub->add_option("--samples", o.samples, "Monte Carlo sample count");
        sub->add_option("--modes", o.modes, "Weyl mode cutoff K");
        sub->add_option("--u", o.u_power, "fiber power for pinning");
        sub->add_option("--max-numerator", o.max_numerator, "corpus numerator cap");
        sub->add_option("--max-denominator", o.max_denominator, "corpus denominator cap");
        sub->add_option("--max-order", o.max_order, "corpus root-of-unity order cap");
    }

    CLI11_PARSE(app, argc, argv);
    std::string kind = app.get_subcommands().front()->get_name();

    try {
        return run(kind, o);
    } catch (const torlab::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const torlab::numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const torlab::capability_error& e) {
        std::cerr << "capability limit: " << e.what() << "\n";
        return 4;
    } catch (const torlab::resource_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
