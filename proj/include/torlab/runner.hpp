#ifndef TORLAB_RUNNER_HPP
#define TORLAB_RUNNER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "torlab/cyclotomic.hpp"

namespace torlab {

inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr const char* kRunSchema = "torlab.run.v1";

enum class ExperimentKind { Height, Orbit, Equidist, Stabilizer, BogomolovScan, Pinning };
enum class TableFormat { Csv, Jsonl };

ExperimentKind experiment_kind_from_name(const std::string& name);
std::string experiment_kind_name(ExperimentKind k);

/// Kind plus kind-specific inputs. The seed is always present (default 0);
/// caps and counts must be positive, validated at run time.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Height;
    nlohmann::ordered_json inputs; // kind-specific keys
    uint64_t seed = 0;
    std::string out_path;
    TableFormat format = TableFormat::Csv;
    unsigned threads = 0; // 0 = all

    nlohmann::ordered_json to_json() const;
    static ExperimentConfig from_json(const nlohmann::ordered_json& j);
};

struct RunRecord {
    std::string schema = kRunSchema;
    std::string version = kArtifactVersion;
    nlohmann::ordered_json config_echo;
    double wall_ms = 0.0;
    nlohmann::ordered_json payload;
    std::vector<std::string> warnings;

    /// Deterministic byte serialization of the results payload alone.
    std::string payload_bytes() const { return payload.dump(); }
    nlohmann::ordered_json to_json() const;
};

/// Dispatch to the owning module. Identical configs (seed included) yield
/// identical payload bytes, independent of the thread count.
RunRecord run_experiment(const ExperimentConfig& cfg);

/// Tabular payloads (payload["table"]) as CSV or JSONL, floats at 17
/// significant digits, deterministic column order.
std::string emit_table(const RunRecord& record, TableFormat format);

/// Coordinate value strings: "3", "-2/5", "zeta(6)", "3/2*zeta(12)^-5".
CycElement parse_value(const std::string& text);

} // namespace torlab

#endif
