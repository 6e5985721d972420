#pragma once

#include <json.hpp>

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qea {

enum class Extrapolation { exponential, linear };
enum class QubitKind { physical, logical };

const char* to_string(Extrapolation e) noexcept;
const char* to_string(QubitKind k) noexcept;

struct RoadmapPoint {
    double year = 0.0;
    double qubits = 0.0;
    std::string source_note;

    friend bool operator==(const RoadmapPoint&, const RoadmapPoint&) = default;
};

// Dated qubit milestones of one vendor, projected to any year. Immutable;
// edits return a new roadmap.
class Roadmap {
public:
    // Throws InvalidRoadmap unless there are >= 2 points with strictly
    // increasing years and positive qubit counts.
    Roadmap(std::string label, QubitKind kind, Extrapolation extrapolation,
            std::vector<RoadmapPoint> points);

    const std::string& label() const noexcept { return label_; }
    QubitKind qubit_kind() const noexcept { return kind_; }
    Extrapolation extrapolation() const noexcept { return extrapolation_; }
    const std::vector<RoadmapPoint>& points() const noexcept { return points_; }

    // Projected qubit count at year t. Between milestones the curve is
    // geometric (exponential mode) or straight (linear mode); outside them the
    // nearest segment's rate is continued. Linear extrapolation that would go
    // below zero yields 0. Requires t >= first year - 50.
    double qubits_at(double t) const;

    // Same as qubits_at but in log10, so far-future exponential extrapolation
    // does not overflow. -inf when no qubits remain.
    double log10_qubits_at(double t) const;

    Roadmap with_point(std::size_t index, double year, double qubits) const;
    Roadmap with_inserted(double year, double qubits, std::string source_note = {}) const;
    Roadmap without_point(std::size_t index) const;
    Roadmap with_extrapolation(Extrapolation e) const;

    friend bool operator==(const Roadmap&, const Roadmap&) = default;

private:
    std::size_t segment_for(double t) const;

    std::string label_;
    QubitKind kind_;
    Extrapolation extrapolation_;
    std::vector<RoadmapPoint> points_;
};

// Problems with a point list, one message per violated rule. Empty when valid.
std::vector<std::string> roadmap_problems(const std::vector<RoadmapPoint>& points);

// Structured-text form: {label, qubit_kind, extrapolation, points: [{year,
// qubits, source_note}]}. Integral numbers are written without a fraction so
// a saved file reloads and re-saves byte for byte.
nlohmann::ordered_json to_json(const Roadmap& rm);
Roadmap roadmap_from_json(const nlohmann::json& j);

std::string dump_roadmap(const Roadmap& rm);
Roadmap load_roadmap(const std::filesystem::path& path);
void save_roadmap(const Roadmap& rm, const std::filesystem::path& path);

}  // namespace qea
