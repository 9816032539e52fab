#include "torlab/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "torlab/equilibrium.hpp"
#include "torlab/errors.hpp"
#include "torlab/orbit.hpp"
#include "torlab/parallel.hpp"
#include "torlab/scan.hpp"

namespace torlab {

using nlohmann::ordered_json;

ExperimentKind experiment_kind_from_name(const std::string& name) {
    if (name == "height") return ExperimentKind::Height;
    if (name == "orbit") return ExperimentKind::Orbit;
    if (name == "equidist") return ExperimentKind::Equidist;
    if (name == "stabilizer") return ExperimentKind::Stabilizer;
    if (name == "bogomolov-scan" || name == "scan") return ExperimentKind::BogomolovScan;
    if (name == "pinning" || name == "pin") return ExperimentKind::Pinning;
    throw config_error("unknown experiment kind: " + name);
}

std::string experiment_kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Height: return "height";
        case ExperimentKind::Orbit: return "orbit";
        case ExperimentKind::Equidist: return "equidist";
        case ExperimentKind::Stabilizer: return "stabilizer";
        case ExperimentKind::BogomolovScan: return "bogomolov-scan";
        case ExperimentKind::Pinning: return "pinning";
    }
    return "height";
}

ordered_json ExperimentConfig::to_json() const {
    ordered_json j;
    j["kind"] = experiment_kind_name(kind);
    j["inputs"] = inputs;
    j["seed"] = seed;
    j["out"] = out_path;
    j["format"] = format == TableFormat::Csv ? "csv" : "jsonl";
    j["threads"] = threads;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const ordered_json& j) {
    ExperimentConfig cfg;
    if (!j.contains("kind")) throw config_error("config: missing key 'kind'");
    cfg.kind = experiment_kind_from_name(j.at("kind").get<std::string>());
    cfg.inputs = j.value("inputs", ordered_json::object());
    cfg.seed = j.value("seed", uint64_t(0));
    cfg.out_path = j.value("out", std::string());
    std::string fmt = j.value("format", std::string("csv"));
    if (fmt == "csv") cfg.format = TableFormat::Csv;
    else if (fmt == "jsonl") cfg.format = TableFormat::Jsonl;
    else throw config_error("config: format must be csv or jsonl, got " + fmt);
    cfg.threads = j.value("threads", 0u);
    return cfg;
}

ordered_json RunRecord::to_json() const {
    ordered_json j;
    j["schema"] = schema;
    j["version"] = version;
    j["config"] = config_echo;
    j["wall_ms"] = wall_ms;
    j["warnings"] = warnings;
    j["payload"] = payload;
    return j;
}

CycElement parse_value(const std::string& text) {
    // [sign] [rational] [* zeta(m) [^k]]
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw config_error("value: empty string");
    bool neg = false;
    std::size_t pos = 0;
    if (s[pos] == '-') {
        neg = true;
        ++pos;
    } else if (s[pos] == '+') {
        ++pos;
    }
    mpq_class rat(1);
    bool have_rat = false;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
            ++pos;
        rat = mpq_class(s.substr(start, pos - start));
        rat.canonicalize();
        have_rat = true;
    }
    CycElement out = CycElement::from_rational(neg ? mpq_class(-rat) : rat);
    if (pos < s.size() && s[pos] == '*') ++pos;
    if (pos < s.size()) {
        if (s.compare(pos, 5, "zeta(") != 0)
            throw config_error("value: cannot parse '" + text + "'");
        pos += 5;
        std::size_t close = s.find(')', pos);
        if (close == std::string::npos) throw config_error("value: missing ')' in '" + text + "'");
        unsigned m = static_cast<unsigned>(std::stoul(s.substr(pos, close - pos)));
        pos = close + 1;
        long k = 1;
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            k = std::stol(s.substr(pos));
            pos = s.size();
        }
        if (pos != s.size()) throw config_error("value: trailing characters in '" + text + "'");
        out = out * CycElement::zeta(m, k);
    } else if (!have_rat && s.size() > static_cast<std::size_t>(neg ? 1 : 0)) {
        throw config_error("value: cannot parse '" + text + "'");
    }
    if (out.is_zero()) throw config_error("value: zero is not a torus coordinate");
    return out;
}

namespace {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

TorusPoint point_from_inputs(const ordered_json& inputs) {
    if (!inputs.contains("point")) throw config_error("config: missing key 'point'");
    std::vector<CycElement> coords;
    for (const auto& c : inputs.at("point")) coords.push_back(parse_value(c.get<std::string>()));
    if (coords.empty()) throw config_error("config: point needs at least one coordinate");
    return TorusPoint(std::move(coords));
}

LaurentHypersurface curve_from_inputs(const ordered_json& inputs) {
    if (inputs.contains("curve"))
        return LaurentHypersurface::parse_poly(inputs.at("curve").get<std::string>(), 2);
    if (inputs.contains("curve_document"))
        return LaurentHypersurface::parse_document(inputs.at("curve_document").get<std::string>());
    throw config_error("config: missing key 'curve'");
}

SupportFamily family_from_inputs(const ordered_json& inputs) {
    if (inputs.contains("family_document"))
        return SupportFamily::parse_document(inputs.at("family_document").get<std::string>());
    if (!inputs.contains("family")) throw config_error("config: missing key 'family'");
    const auto& fj = inputs.at("family");
    unsigned n = fj.value("n", 2u);
    std::vector<SupportFamily::Entry> entries;
    for (const auto& tj : fj.at("terms")) {
        SupportFamily::Entry e;
        for (const auto& v : tj.at("exp")) e.exponents.push_back(v.get<long>());
        if (tj.contains("param")) e.param_name = tj.at("param").get<std::string>();
        else e.fixed = parse_value(tj.at("coeff").get<std::string>());
        entries.push_back(std::move(e));
    }
    return SupportFamily(n, std::move(entries));
}

CorpusSpec corpus_from_inputs(const ordered_json& inputs) {
    CorpusSpec spec;
    if (inputs.contains("corpus")) {
        const auto& cj = inputs.at("corpus");
        spec.max_numerator = cj.value("max_numerator", spec.max_numerator);
        spec.max_denominator = cj.value("max_denominator", spec.max_denominator);
        spec.max_order = cj.value("max_order", spec.max_order);
        spec.include_products = cj.value("include_products", spec.include_products);
    }
    if (spec.max_numerator < 1 || spec.max_denominator < 1 || spec.max_order < 1)
        throw config_error("config: corpus caps must be positive");
    return spec;
}

long positive_long(const ordered_json& inputs, const char* key, long fallback) {
    long v = inputs.value(key, fallback);
    if (v <= 0) throw config_error(std::string("config: ") + key + " must be positive");
    return v;
}

ordered_json weyl_table(const WeightedSample& s, long modes) {
    ordered_json rows = ordered_json::array();
    for (const auto& k : weyl_modes(s.ambient_dim(), modes)) {
        auto w = weyl_sum(s, k);
        ordered_json row;
        row["k"] = k;
        row["re"] = fmt17(w.real());
        row["im"] = fmt17(w.imag());
        row["abs"] = fmt17(std::abs(w));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json run_height(const ordered_json& inputs) {
    TorusPoint p = point_from_inputs(inputs);
    ordered_json payload;
    ordered_json rows = ordered_json::array();
    double total = 0.0;
    const auto& coords = p.exact_coords();
    for (std::size_t i = 0; i < coords.size(); ++i) {
        double h = weil_height_cyc(coords[i]);
        total += h;
        ordered_json row;
        row["coordinate"] = i;
        row["value"] = coords[i].to_string();
        row["height"] = fmt17(h);
        rows.push_back(std::move(row));
    }
    payload["canonical_height"] = fmt17(total);
    payload["table"] = std::move(rows);
    payload["columns"] = ordered_json::array({"coordinate", "value", "height"});
    return payload;
}

ordered_json run_orbit(const ordered_json& inputs) {
    TorusPoint p = point_from_inputs(inputs);
    long modes = positive_long(inputs, "modes", 5);
    auto orbit = galois_orbit(p);
    ordered_json payload;
    payload["conductor"] = p.conductor();
    payload["orbit_size"] = orbit.points().size();
    payload["radial_defect"] = fmt17(radial_defect(orbit));
    payload["table"] = weyl_table(orbit, modes);
    payload["columns"] = ordered_json::array({"k", "re", "im", "abs"});
    return payload;
}

ordered_json run_equidist(const ordered_json& inputs, uint64_t seed,
                          std::vector<std::string>& warnings) {
    LaurentHypersurface f = curve_from_inputs(inputs);
    long n_samples = positive_long(inputs, "samples", 10000);
    long modes = positive_long(inputs, "modes", 5);
    auto comps = equilibrium_components(f);
    auto sample = equilibrium_sample(f, static_cast<std::size_t>(n_samples), seed);
    for (const auto& w : sample.warnings()) warnings.push_back(w);

    ordered_json payload;
    payload["curve"] = f.to_string();
    ordered_json cj = ordered_json::array();
    double total = 0.0;
    for (const auto& c : comps) {
        ordered_json one;
        one["index"] = c.index;
        one["mass"] = c.mass;
        total += c.mass;
        cj.push_back(std::move(one));
    }
    payload["components"] = std::move(cj);
    payload["total_mass"] = total;
    payload["points"] = sample.points().size();
    payload["radial_defect"] = fmt17(radial_defect(sample));
    payload["table"] = weyl_table(sample, modes);
    payload["columns"] = ordered_json::array({"k", "re", "im", "abs"});
    return payload;
}

ordered_json run_stabilizer(const ordered_json& inputs) {
    LaurentHypersurface f = curve_from_inputs(inputs);
    auto md = f.multidegree();
    auto stab = stabilizer(f);
    auto coset = torsion_coset_test(f);
    auto gen = generates_ambient(f);

    ordered_json payload;
    payload["curve"] = f.to_string();
    payload["multidegree"] = md.partial;
    payload["total_degree"] = md.total;
    payload["stabilizer_dim"] = stab.dim;
    ordered_json inv = ordered_json::array();
    for (const auto& d : stab.torsion_invariants) inv.push_back(d.get_str());
    payload["torsion_invariants"] = std::move(inv);
    ordered_json gens = ordered_json::array();
    for (std::size_t r = 0; r < stab.generators.rows(); ++r) {
        ordered_json row;
        ordered_json exps = ordered_json::array();
        for (std::size_t c = 0; c < stab.generators.cols(); ++c)
            exps.push_back(stab.generators.at(r, c).get_str());
        row["exponents"] = std::move(exps);
        row["order"] = stab.generator_orders[r].get_str();
        gens.push_back(std::move(row));
    }
    payload["generators"] = std::move(gens);
    payload["coset"] = coset.is_coset;
    payload["torsion_coset"] = coset.is_coset && coset.torsion;
    payload["generates"] = gen == Generates::Yes      ? "yes"
                           : gen == Generates::No     ? "no"
                                                      : "heuristic-yes";
    // tabular view: one row per generator
    ordered_json rows = ordered_json::array();
    for (std::size_t r = 0; r < stab.generators.rows(); ++r) {
        ordered_json row;
        row["generator"] = r;
        std::string e;
        for (std::size_t c = 0; c < stab.generators.cols(); ++c)
            e += (c ? "," : "") + stab.generators.at(r, c).get_str();
        row["exponents"] = e;
        row["order"] = stab.generator_orders[r].get_str();
        rows.push_back(std::move(row));
    }
    payload["table"] = std::move(rows);
    payload["columns"] = ordered_json::array({"generator", "exponents", "order"});
    return payload;
}

ordered_json run_scan(const ordered_json& inputs, std::vector<std::string>& warnings) {
    SupportFamily fam = family_from_inputs(inputs);
    if (!inputs.contains("members")) throw config_error("config: missing key 'members'");
    std::vector<MemberParams> members;
    for (const auto& mj : inputs.at("members")) {
        MemberParams mp;
        for (auto it = mj.begin(); it != mj.end(); ++it)
            mp.emplace_back(it.key(), parse_value(it.value().get<std::string>()));
        members.push_back(std::move(mp));
    }
    std::vector<double> thresholds;
    if (inputs.contains("thresholds"))
        for (const auto& t : inputs.at("thresholds")) thresholds.push_back(t.get<double>());
    else
        thresholds = {0.01, 0.02, 0.05};
    for (double t : thresholds)
        if (!(t > 0)) throw config_error("config: thresholds must be positive");
    CorpusSpec corpus = corpus_from_inputs(inputs);

    auto reports = uniform_scan(fam, members, thresholds, corpus);
    ordered_json payload;
    payload["family"] = fam.to_string();
    payload["members"] = reports.size();
    ordered_json rows = ordered_json::array();
    for (const auto& rep : reports) {
        if (rep.accepted) {
            for (std::size_t t = 0; t < rep.thresholds.size(); ++t) {
                ordered_json row;
                row["member"] = rep.member_id;
                row["status"] = "accepted";
                row["threshold"] = fmt17(rep.thresholds[t]);
                row["count"] = rep.counts[t];
                row["torsion_count"] = rep.torsion_count;
                row["min_positive_height"] =
                    rep.min_positive_height ? fmt17(*rep.min_positive_height) : "";
                row["filtered"] = rep.filtered_count;
                row["exceeds_family_max"] = rep.exceeds_family_max;
                rows.push_back(std::move(row));
            }
        } else {
            ordered_json row;
            row["member"] = rep.member_id;
            row["status"] = "skipped:" + rep.skip_reason;
            row["threshold"] = "";
            row["count"] = 0;
            row["torsion_count"] = 0;
            row["min_positive_height"] = "";
            row["filtered"] = 0;
            row["exceeds_family_max"] = false;
            rows.push_back(std::move(row));
            warnings.push_back("member " + rep.member_id + " skipped: " + rep.skip_reason);
        }
    }
    payload["table"] = std::move(rows);
    payload["columns"] =
        ordered_json::array({"member", "status", "threshold", "count", "torsion_count",
                             "min_positive_height", "filtered", "exceeds_family_max"});
    return payload;
}

ordered_json run_pinning(const ordered_json& inputs) {
    SupportFamily fam = family_from_inputs(inputs);
    if (!inputs.contains("corpus_points")) throw config_error("config: missing key 'corpus_points'");
    std::vector<TorusPoint> corpus;
    for (const auto& pj : inputs.at("corpus_points")) {
        std::vector<CycElement> coords;
        for (const auto& c : pj) coords.push_back(parse_value(c.get<std::string>()));
        corpus.emplace_back(std::move(coords));
    }
    long u = positive_long(inputs, "u", 2);

    auto cert = pinning_points(fam, corpus);
    ordered_json payload;
    payload["family"] = fam.to_string();
    payload["free_parameters"] = fam.free_count();
    payload["residual_rank"] = cert.residual_rank;
    payload["fiber_dim"] = cert.fiber_dim;
    payload["nondegenerate_at_u"] = nondegenerate_power(fam, static_cast<unsigned>(u), corpus);
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < cert.points.size(); ++i) {
        ordered_json row;
        row["index"] = i;
        row["point"] = cert.points[i].to_string();
        rows.push_back(std::move(row));
    }
    payload["table"] = std::move(rows);
    payload["columns"] = ordered_json::array({"index", "point"});
    return payload;
}

} // namespace

RunRecord run_experiment(const ExperimentConfig& cfg) {
    RunRecord rec;
    rec.config_echo = cfg.to_json();
    set_thread_count(cfg.threads);
    auto t0 = std::chrono::steady_clock::now();
    switch (cfg.kind) {
        case ExperimentKind::Height: rec.payload = run_height(cfg.inputs); break;
        case ExperimentKind::Orbit: rec.payload = run_orbit(cfg.inputs); break;
        case ExperimentKind::Equidist:
            rec.payload = run_equidist(cfg.inputs, cfg.seed, rec.warnings);
            break;
        case ExperimentKind::Stabilizer: rec.payload = run_stabilizer(cfg.inputs); break;
        case ExperimentKind::BogomolovScan: rec.payload = run_scan(cfg.inputs, rec.warnings); break;
        case ExperimentKind::Pinning: rec.payload = run_pinning(cfg.inputs); break;
    }
    auto t1 = std::chrono::steady_clock::now();
    rec.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rec;
}

std::string emit_table(const RunRecord& record, TableFormat format) {
    if (!record.payload.contains("table") || !record.payload.contains("columns"))
        throw capability_error("emit_table: payload is not tabular");
    const auto& cols = record.payload.at("columns");
    const auto& rows = record.payload.at("table");

    std::ostringstream os;
    if (format == TableFormat::Csv) {
        for (std::size_t c = 0; c < cols.size(); ++c)
            os << (c ? "," : "") << cols[c].get<std::string>();
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < cols.size(); ++c) {
                const auto& v = row.at(cols[c].get<std::string>());
                std::string cell;
                if (v.is_string()) cell = v.get<std::string>();
                else if (v.is_number_float()) cell = fmt17(v.get<double>());
                else if (v.is_boolean()) cell = v.get<bool>() ? "true" : "false";
                else if (v.is_array()) {
                    for (const auto& e : v) cell += (cell.empty() ? "" : ";") + e.dump();
                } else cell = v.dump();
                os << (c ? "," : "") << cell;
            }
            os << "\n";
        }
    } else {
        for (const auto& row : rows) os << row.dump() << "\n";
    }
    return os.str();
}

} // namespace torlab
