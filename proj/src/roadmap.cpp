#include "qea/roadmap.hpp"

#include "qea/error.hpp"
#include "qea/json_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace qea {

const char* to_string(Extrapolation e) noexcept {
    return e == Extrapolation::exponential ? "exponential" : "linear";
}

const char* to_string(QubitKind k) noexcept {
    return k == QubitKind::physical ? "physical" : "logical";
}

std::vector<std::string> roadmap_problems(const std::vector<RoadmapPoint>& points) {
    std::vector<std::string> out;
    if (points.size() < 2) out.push_back("roadmap needs at least 2 points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (!std::isfinite(p.year)) out.push_back("point " + std::to_string(i) + ": year is not finite");
        if (!(p.qubits > 0.0) || !std::isfinite(p.qubits))
            out.push_back("point " + std::to_string(i) + ": qubit count must be positive");
        if (i > 0 && !(points[i - 1].year < p.year))
            out.push_back("point " + std::to_string(i) + ": years must be strictly increasing");
    }
    return out;
}

Roadmap::Roadmap(std::string label, QubitKind kind, Extrapolation extrapolation,
                 std::vector<RoadmapPoint> points)
    : label_(std::move(label)), kind_(kind), extrapolation_(extrapolation), points_(std::move(points)) {
    if (auto problems = roadmap_problems(points_); !problems.empty())
        throw InvalidRoadmap("roadmap '" + label_ + "': " + problems.front());
}

std::size_t Roadmap::segment_for(double t) const {
    // Index i of the segment [i, i+1] used for t; the first and last
    // segments also cover the extrapolated ranges.
    const auto it = std::upper_bound(points_.begin(), points_.end(), t,
                                     [](double y, const RoadmapPoint& p) { return y < p.year; });
    const auto idx = static_cast<std::size_t>(std::distance(points_.begin(), it));
    if (idx == 0) return 0;
    return std::min(idx - 1, points_.size() - 2);
}

double Roadmap::log10_qubits_at(double t) const {
    if (!(t >= points_.front().year - 50.0))
        throw InvalidArgument("roadmap '" + label_ + "' queried at year " + std::to_string(t) +
                              ", more than 50 years before its first point");
    const std::size_t i = segment_for(t);
    const RoadmapPoint& a = points_[i];
    const RoadmapPoint& b = points_[i + 1];
    if (t == a.year) return std::log10(a.qubits);
    if (t == b.year) return std::log10(b.qubits);
    const double frac = (t - a.year) / (b.year - a.year);
    if (extrapolation_ == Extrapolation::exponential) {
        const double la = std::log10(a.qubits);
        return la + (std::log10(b.qubits) - la) * frac;
    }
    const double v = a.qubits + (b.qubits - a.qubits) * frac;
    return v > 0.0 ? std::log10(v) : -std::numeric_limits<double>::infinity();
}

double Roadmap::qubits_at(double t) const {
    const std::size_t i = segment_for(t);
    for (std::size_t k : {i, i + 1})
        if (t == points_[k].year) return points_[k].qubits;
    const double lg = log10_qubits_at(t);
    return std::isinf(lg) && lg < 0 ? 0.0 : std::pow(10.0, lg);
}

Roadmap Roadmap::with_point(std::size_t index, double year, double qubits) const {
    if (index >= points_.size()) throw InvalidEdit("no point at index " + std::to_string(index));
    auto pts = points_;
    pts[index].year = year;
    pts[index].qubits = qubits;
    if (auto problems = roadmap_problems(pts); !problems.empty()) throw InvalidEdit(problems.front());
    return Roadmap(label_, kind_, extrapolation_, std::move(pts));
}

Roadmap Roadmap::with_inserted(double year, double qubits, std::string source_note) const {
    auto pts = points_;
    const auto pos = std::upper_bound(pts.begin(), pts.end(), year,
                                      [](double y, const RoadmapPoint& p) { return y < p.year; });
    pts.insert(pos, RoadmapPoint{year, qubits, std::move(source_note)});
    if (auto problems = roadmap_problems(pts); !problems.empty()) throw InvalidEdit(problems.front());
    return Roadmap(label_, kind_, extrapolation_, std::move(pts));
}

Roadmap Roadmap::without_point(std::size_t index) const {
    if (index >= points_.size()) throw InvalidEdit("no point at index " + std::to_string(index));
    auto pts = points_;
    pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(index));
    if (auto problems = roadmap_problems(pts); !problems.empty()) throw InvalidEdit(problems.front());
    return Roadmap(label_, kind_, extrapolation_, std::move(pts));
}

Roadmap Roadmap::with_extrapolation(Extrapolation e) const {
    return Roadmap(label_, kind_, e, points_);
}

// ---------------------------------------------------------------------------

nlohmann::ordered_json to_json(const Roadmap& rm) {
    nlohmann::ordered_json j;
    j["label"] = rm.label();
    j["qubit_kind"] = to_string(rm.qubit_kind());
    j["extrapolation"] = to_string(rm.extrapolation());
    auto pts = nlohmann::ordered_json::array();
    for (const auto& p : rm.points()) {
        nlohmann::ordered_json jp;
        jp["year"] = json_number(p.year);
        jp["qubits"] = json_number(p.qubits);
        jp["source_note"] = p.source_note;
        pts.push_back(std::move(jp));
    }
    j["points"] = std::move(pts);
    return j;
}

Roadmap roadmap_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw InvalidRoadmap("roadmap must be an object");
        const std::string label = j.value("label", std::string{});
        const std::string kind = j.value("qubit_kind", std::string("physical"));
        const std::string extrap = j.value("extrapolation", std::string("exponential"));
        QubitKind k;
        if (kind == "physical") k = QubitKind::physical;
        else if (kind == "logical") k = QubitKind::logical;
        else throw InvalidRoadmap("qubit_kind must be 'physical' or 'logical', got '" + kind + "'");
        Extrapolation e;
        if (extrap == "exponential") e = Extrapolation::exponential;
        else if (extrap == "linear") e = Extrapolation::linear;
        else throw InvalidRoadmap("extrapolation must be 'exponential' or 'linear', got '" + extrap + "'");
        if (!j.contains("points") || !j.at("points").is_array()) throw InvalidRoadmap("points must be an array");
        std::vector<RoadmapPoint> pts;
        for (const auto& jp : j.at("points")) {
            RoadmapPoint p;
            p.year = jp.at("year").get<double>();
            p.qubits = jp.at("qubits").get<double>();
            p.source_note = jp.value("source_note", std::string{});
            pts.push_back(std::move(p));
        }
        return Roadmap(label, k, e, std::move(pts));
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidRoadmap(std::string("malformed roadmap: ") + ex.what());
    }
}

std::string dump_roadmap(const Roadmap& rm) { return to_json(rm).dump(2) + "\n"; }

Roadmap load_roadmap(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidRoadmap("cannot open roadmap file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(ss.str());
    } catch (const nlohmann::json::exception& ex) {
        throw InvalidRoadmap(path.string() + ": " + ex.what());
    }
    return roadmap_from_json(j);
}

void save_roadmap(const Roadmap& rm, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write roadmap file " + path.string());
    out << dump_roadmap(rm);
}

}  // namespace qea
