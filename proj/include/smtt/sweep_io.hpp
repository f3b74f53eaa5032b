#pragma once

/// @file sweep_io.hpp
/// @brief Sweep spec files, known-optima files, record CSV and the Markdown grid report.

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "smtt/harness.hpp"
#include "smtt/io.hpp"

namespace smtt {

/// Shortest decimal text that round-trips to the same double.
[[nodiscard]] inline std::string format_number(double value) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general);
    if (ec != std::errc{}) {
        throw ConsistencyError("format_number: to_chars failed");
    }
    return std::string(buf.data(), end);
}

[[nodiscard]] inline std::string format_fixed(double value, int digits) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, digits);
    if (ec != std::errc{}) {
        throw ConsistencyError("format_fixed: to_chars failed");
    }
    return std::string(buf.data(), end);
}

// ---------------------------------------------------------------------------
// Known optima: {"problem-1": 23, ...}

[[nodiscard]] inline std::map<std::string, Time> known_optima_from_json(const json& doc, const std::string& source) {
    if (!doc.is_object()) {
        throw ValidationError(source + ": known optima must be a JSON object of name -> integer");
    }
    std::map<std::string, Time> optima;
    for (const auto& [name, value] : doc.items()) {
        if (!value.is_number_integer() || value.get<Time>() < 0) {
            throw ValidationError(source + ": " + name + ": expected a non-negative integer optimum");
        }
        optima[name] = value.get<Time>();
    }
    return optima;
}

[[nodiscard]] inline std::map<std::string, Time> load_known_optima(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    return known_optima_from_json(parse_json(text, path.string()), path.string());
}

// ---------------------------------------------------------------------------
// Sweep spec file
//
// {
//   "populations": [100, 50, 25, 10],          (optional, these are the defaults)
//   "mutation_rates": [0.75, 0.075, 0.0075],   (optional)
//   "convergences": [0.0001, 0.1],             (optional)
//   "seeds_per_cell": 5, "time_limit": 45, "max_stall": 30,
//   "max_generations": 200, "crossover_rate": 0.9,
//   "master_seed": 0, "concurrency": 1,
//   "instances": ["problem-1.json", "p1", ...],
//   "known_optima": "optima.json" | {"p1": 23}
// }
//
// Relative paths resolve against the spec file's directory.

namespace detail {

template <typename T>
T number_field(const json& doc, const char* key, T fallback, const std::string& source) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        return fallback;
    }
    if constexpr (std::is_floating_point_v<T>) {
        if (!it->is_number()) {
            throw ValidationError(source + ": " + key + ": expected a number");
        }
    } else {
        if (!it->is_number_unsigned()) {
            throw ValidationError(source + ": " + key + ": expected a non-negative integer");
        }
    }
    return it->get<T>();
}

template <typename T>
std::vector<T> number_list(const json& doc, const char* key, std::vector<T> fallback, const std::string& source) {
    const auto it = doc.find(key);
    if (it == doc.end()) {
        return fallback;
    }
    if (!it->is_array()) {
        throw ValidationError(source + ": " + key + ": expected an array");
    }
    std::vector<T> out;
    for (std::size_t i = 0; i < it->size(); ++i) {
        const json& v = (*it)[i];
        const bool ok = std::is_floating_point_v<T> ? v.is_number() : v.is_number_unsigned();
        if (!ok) {
            throw ValidationError(source + ": " + key + "[" + std::to_string(i) + "]: expected a number");
        }
        out.push_back(v.get<T>());
    }
    return out;
}

} // namespace detail

[[nodiscard]] inline SweepSpec sweep_spec_from_json(const json& doc, const std::filesystem::path& base_dir,
                                                    const std::string& source) {
    if (!doc.is_object()) {
        throw ValidationError(source + ": expected a JSON object at top level");
    }
    SweepSpec spec;
    spec.populations = detail::number_list<std::size_t>(doc, "populations", spec.populations, source);
    spec.mutation_rates = detail::number_list<double>(doc, "mutation_rates", spec.mutation_rates, source);
    spec.convergences = detail::number_list<double>(doc, "convergences", spec.convergences, source);
    spec.seeds_per_cell = detail::number_field<std::size_t>(doc, "seeds_per_cell", spec.seeds_per_cell, source);
    spec.time_limit = detail::number_field<double>(doc, "time_limit", spec.time_limit, source);
    spec.max_stall = detail::number_field<double>(doc, "max_stall", spec.max_stall, source);
    spec.crossover_rate = detail::number_field<double>(doc, "crossover_rate", spec.crossover_rate, source);
    spec.master_seed = detail::number_field<std::uint64_t>(doc, "master_seed", spec.master_seed, source);
    spec.concurrency = detail::number_field<std::size_t>(doc, "concurrency", spec.concurrency, source);
    if (doc.contains("max_generations")) {
        spec.max_generations = detail::number_field<std::uint64_t>(doc, "max_generations", 0, source);
    }

    const auto inst = doc.find("instances");
    if (inst == doc.end() || !inst->is_array() || inst->empty()) {
        throw ValidationError(source + ": instances: expected a non-empty array of file paths");
    }
    for (std::size_t i = 0; i < inst->size(); ++i) {
        const json& ref = (*inst)[i];
        if (!ref.is_string()) {
            throw ValidationError(source + ": instances[" + std::to_string(i) + "]: expected a string");
        }
        spec.instances.push_back(load_instance_ref(ref.get<std::string>(), base_dir));
    }

    if (const auto ko = doc.find("known_optima"); ko != doc.end()) {
        if (ko->is_string()) {
            const std::filesystem::path path(ko->get<std::string>());
            spec.known_optima = load_known_optima(path.is_absolute() ? path : base_dir / path);
        } else {
            spec.known_optima = known_optima_from_json(*ko, source + ": known_optima");
        }
    }
    validate(spec);
    return spec;
}

[[nodiscard]] inline SweepSpec load_sweep_spec(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    return sweep_spec_from_json(parse_json(text, path.string()), path.parent_path(), path.string());
}

// ---------------------------------------------------------------------------
// Records CSV

inline constexpr const char* kRecordsHeader =
    "instance,convergence,population,mutation,seed,best,time_to_best,wall_time,stop_reason,status";

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

inline std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

template <typename T>
T parse_csv_number(const std::string& field, const std::string& where) {
    T value{};
    const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || end != field.data() + field.size()) {
        throw ValidationError(where + ": cannot parse '" + field + "' as a number");
    }
    return value;
}

} // namespace detail

[[nodiscard]] inline std::string records_to_csv(std::span<const RunRecord> records) {
    std::string out = std::string(kRecordsHeader) + "\n";
    for (const auto& r : records) {
        out += detail::csv_field(r.instance_name) + "," + format_number(r.convergence) + "," +
               std::to_string(r.population_size) + "," + format_number(r.mutation_rate) + "," +
               std::to_string(r.seed) + "," + std::to_string(r.best_value) + "," + format_number(r.time_to_best) +
               "," + format_number(r.wall_time) + "," + to_string(r.stop_reason) + "," + to_string(r.status) + "\n";
    }
    return out;
}

[[nodiscard]] inline std::vector<RunRecord> records_from_csv(const std::string& text, const std::string& source) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kRecordsHeader) {
        throw ValidationError(source + ": line 1: expected header '" + std::string(kRecordsHeader) + "'");
    }
    std::vector<RunRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        const std::string where = source + ": line " + std::to_string(line_no);
        const auto f = detail::csv_split(line);
        if (f.size() != 10) {
            throw ValidationError(where + ": expected 10 fields, got " + std::to_string(f.size()));
        }
        RunRecord r;
        r.instance_name = f[0];
        r.convergence = detail::parse_csv_number<double>(f[1], where);
        r.population_size = detail::parse_csv_number<std::size_t>(f[2], where);
        r.mutation_rate = detail::parse_csv_number<double>(f[3], where);
        r.seed = detail::parse_csv_number<std::uint64_t>(f[4], where);
        r.best_value = detail::parse_csv_number<Time>(f[5], where);
        r.time_to_best = detail::parse_csv_number<double>(f[6], where);
        r.wall_time = detail::parse_csv_number<double>(f[7], where);
        const auto stop = stop_reason_from_string(f[8]);
        const auto status = status_from_string(f[9]);
        if (!stop || !status) {
            throw ValidationError(where + ": unknown stop_reason or status");
        }
        r.stop_reason = *stop;
        r.status = *status;
        records.push_back(std::move(r));
    }
    return records;
}

// ---------------------------------------------------------------------------
// Markdown grid: one row per (convergence, population, mutation), one column
// per instance. Cells hold the median time-to-best (seconds) over runs that
// reached the optimum, or NA when none did.

[[nodiscard]] inline std::string grid_markdown(const GridSummary& summary) {
    auto median_cell = [](const CellStats& s) -> std::string {
        if (s.known == 0) {
            return "-";
        }
        return s.median_time_to_best ? format_fixed(*s.median_time_to_best, 6) : "NA";
    };
    auto rate_cell = [](const CellStats& s) -> std::string {
        return s.hit_rate ? format_fixed(*s.hit_rate, 2) : "-";
    };

    std::ostringstream md;
    md << "# Time to best solution (seconds)\n\n";
    md << "Cells: median time-to-best over runs that reached the optimum; NA when no run did.\n\n";
    md << "| convergence | population | mutation |";
    for (const auto& name : summary.instances) {
        md << ' ' << name << " |";
    }
    md << " hit rate | median |\n";
    md << "|---|---|---|";
    for (std::size_t i = 0; i < summary.instances.size(); ++i) {
        md << "---|";
    }
    md << "---|---|\n";

    for (const auto& key : summary.cells) {
        md << "| " << format_number(key.convergence) << " | " << key.population_size << " | "
           << format_number(key.mutation_rate) << " |";
        const auto& row = summary.per_instance.at(key);
        for (const auto& name : summary.instances) {
            const auto it = row.find(name);
            md << ' ' << (it == row.end() ? std::string("-") : median_cell(it->second)) << " |";
        }
        const CellStats& cell = summary.per_cell.at(key);
        md << ' ' << rate_cell(cell) << " | " << median_cell(cell) << " |\n";
    }

    md << "\n# Hit rate per instance\n\n";
    md << "| convergence | population | mutation |";
    for (const auto& name : summary.instances) {
        md << ' ' << name << " |";
    }
    md << "\n|---|---|---|";
    for (std::size_t i = 0; i < summary.instances.size(); ++i) {
        md << "---|";
    }
    md << '\n';
    for (const auto& key : summary.cells) {
        md << "| " << format_number(key.convergence) << " | " << key.population_size << " | "
           << format_number(key.mutation_rate) << " |";
        const auto& row = summary.per_instance.at(key);
        for (const auto& name : summary.instances) {
            const auto it = row.find(name);
            md << ' ' << (it == row.end() ? std::string("-") : rate_cell(it->second)) << " |";
        }
        md << '\n';
    }
    return md.str();
}

} // namespace smtt
