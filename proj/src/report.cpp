#include "onecircuit/report.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace onecircuit {

namespace {

using nlohmann::json;

const json& require(const json& j, const char* field) {
    auto it = j.find(field);
    if (it == j.end())
        throw std::runtime_error(std::string("report is missing field \"") + field + "\"");
    return *it;
}

template <typename T>
T field_as(const json& j, const char* field) {
    try {
        return require(j, field).get<T>();
    } catch (const json::exception&) {
        throw std::runtime_error(std::string("report field \"") + field +
                                 "\" has the wrong type");
    }
}

}  // namespace

std::string report_to_json(const GradientReport& report) {
    json j;
    j["schema"] = 1;
    j["mode"] = report.mode;
    j["config"] = {{"Q", report.num_qubits}, {"reps", report.reps}, {"theta", report.theta}};
    j["shots_planned"] = report.shots_planned;
    j["gradients"] = report.gradients;
    j["unshifted_cost"] = report.unshifted_cost;
    if (report.per_index_shots)
        j["per_index_shots"] = *report.per_index_shots;
    else
        j["per_index_shots"] = nullptr;
    j["seed"] = report.seed;
    return j.dump(2);
}

GradientReport report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("malformed report JSON: ") + e.what());
    }
    if (const int schema = field_as<int>(j, "schema"); schema != 1)
        throw std::runtime_error("unsupported report schema version " + std::to_string(schema));

    GradientReport report;
    report.mode = field_as<std::string>(j, "mode");
    const json& config = require(j, "config");
    report.num_qubits = field_as<int>(config, "Q");
    report.reps = field_as<int>(config, "reps");
    report.theta = field_as<std::vector<double>>(config, "theta");
    report.shots_planned = field_as<std::int64_t>(j, "shots_planned");
    report.gradients = field_as<std::vector<double>>(j, "gradients");
    report.unshifted_cost = field_as<double>(j, "unshifted_cost");
    const json& shots = require(j, "per_index_shots");
    if (!shots.is_null()) report.per_index_shots = field_as<std::vector<std::int64_t>>(j, "per_index_shots");
    report.seed = field_as<std::uint64_t>(j, "seed");
    return report;
}

void persist_report(const GradientReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << report_to_json(report) << '\n';
    if (!out) throw std::runtime_error("failed to write " + path);
}

GradientReport load_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return report_from_json(text);
}

}  // namespace onecircuit
