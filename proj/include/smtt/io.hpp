#pragma once

/// @file io.hpp
/// @brief JSON interchange: instance files, solver results, oracle results.
///
/// Instance file: {"name": string, "jobs": [{"id": int, "p": int, "d": int}, ...]}

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "smtt/core.hpp"
#include "smtt/evolver.hpp"
#include "smtt/oracle.hpp"

namespace smtt {

using nlohmann::json;

namespace detail {

inline std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline Time integer_field(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw ValidationError(where + "." + key + ": missing");
    }
    if (!it->is_number_integer()) {
        throw ValidationError(where + "." + key + ": expected integer, got " + std::string(it->type_name()));
    }
    return it->get<Time>();
}

} // namespace detail

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ValidationError("cannot write '" + path.string() + "'");
    }
    out << text;
    if (!out) {
        throw ValidationError("failed writing '" + path.string() + "'");
    }
}

/// Parses JSON text, reporting syntax errors with line and column.
inline json parse_json(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(source + ": " + detail::line_col(text, e.byte) + ": malformed JSON");
    }
}

[[nodiscard]] inline json to_json(const Instance& instance) {
    json jobs = json::array();
    for (const auto& job : instance.jobs()) {
        jobs.push_back(json{{"id", job.id}, {"p", job.p}, {"d", job.d}});
    }
    return json{{"name", instance.name()}, {"jobs", std::move(jobs)}};
}

[[nodiscard]] inline Instance instance_from_json(const json& doc, const std::string& source) {
    if (!doc.is_object()) {
        throw ValidationError(source + ": expected a JSON object at top level");
    }
    std::string name;
    if (const auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) {
            throw ValidationError(source + ": name: expected string");
        }
        name = it->get<std::string>();
    } else {
        throw ValidationError(source + ": name: missing");
    }
    const auto jobs_it = doc.find("jobs");
    if (jobs_it == doc.end() || !jobs_it->is_array()) {
        throw ValidationError(source + ": jobs: expected an array");
    }
    std::vector<Job> jobs;
    jobs.reserve(jobs_it->size());
    for (std::size_t i = 0; i < jobs_it->size(); ++i) {
        const json& entry = (*jobs_it)[i];
        const std::string where = source + ": jobs[" + std::to_string(i) + "]";
        if (!entry.is_object()) {
            throw ValidationError(where + ": expected an object");
        }
        const Time id = detail::integer_field(entry, "id", where);
        if (id < 1 || id > static_cast<Time>(std::numeric_limits<JobId>::max())) {
            throw ValidationError(where + ".id: job id " + std::to_string(id) + " out of range");
        }
        jobs.push_back(Job{static_cast<JobId>(id), detail::integer_field(entry, "p", where),
                           detail::integer_field(entry, "d", where)});
    }
    try {
        return Instance(std::move(name), std::move(jobs));
    } catch (const ValidationError& e) {
        throw ValidationError(source + ": " + e.what());
    }
}

[[nodiscard]] inline Instance load_instance(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    return instance_from_json(parse_json(text, path.string()), path.string());
}

/// Resolves an instance reference: the built-in name "p1", otherwise a
/// file path (relative paths are taken against `base_dir`).
[[nodiscard]] inline Instance load_instance_ref(const std::string& ref,
                                                const std::filesystem::path& base_dir = {}) {
    if (ref == "p1") {
        return builtin_p1();
    }
    const std::filesystem::path path(ref);
    return load_instance(path.is_absolute() || base_dir.empty() ? path : base_dir / path);
}

inline void save_instance(const std::filesystem::path& path, const Instance& instance) {
    write_text_file(path, to_json(instance).dump(2) + "\n");
}

[[nodiscard]] inline json to_json(const ExactResult& r) {
    return json{{"optimum", r.optimum}, {"witness", r.witness}, {"method", to_string(r.method)}, {"explored", r.explored}};
}

[[nodiscard]] inline json to_json(const EaResult& r) {
    return json{{"best", r.best},
                {"best_value", r.best_value},
                {"generations", r.generations},
                {"wall_time", r.wall_time},
                {"time_to_best", r.time_to_best},
                {"stop_reason", to_string(r.stop_reason)},
                {"seed_used", r.seed_used}};
}

} // namespace smtt
