#pragma once

#include "diffmat/bigint.hpp"
#include "diffmat/bounds.hpp"
#include "diffmat/params.hpp"
#include "diffmat/quad.hpp"
#include "diffmat/walk.hpp"

#include <json.hpp>

#include <string>

namespace diffmat {

using Json = nlohmann::json;

inline constexpr int schema_version = 1;

inline Json params_json(const Params& p) {
    return Json{{"g", p.g}, {"k", p.k}, {"lambda", p.lambda}, {"t", p.t}, {"d", p.d}};
}

// Every emitted record carries {schema_version, command, params, method,
// rigor}; counts travel as decimal strings so arbitrary precision survives
// transport.
inline Json base_record(const std::string& command, const Params& p, const std::string& method) {
    Json j;
    j["schema_version"] = schema_version;
    j["command"] = command;
    j["params"] = params_json(p);
    j["method"] = method;
    j["rigor"] = Json::object();
    return j;
}

inline Json count_record(const Params& p, const std::string& method, const BigCount& count,
                         const Rational& p_return, double wall_ms) {
    Json j = base_record("count", p, method);
    j["count"] = count.str();
    j["p_return"] = p_return.str();
    j["drake"] = p.drake_flag;
    j["jungnickel_warning"] = p.jungnickel_flag;
    j["rigor"] = {{"exact", true}};
    j["wall_ms"] = wall_ms;
    return j;
}

inline Json estimate_record(const Params& p, const McEstimate& e, double wall_ms) {
    Json j = base_record("estimate", p, "mc");
    j["p_hat"] = e.p_hat;
    j["stderr"] = e.std_error;
    j["hits"] = BigCount(e.hits).str();
    j["samples"] = e.samples;
    j["seed"] = e.seed;
    j["rigor"] = {{"exact", false}, {"stochastic", true}};
    j["wall_ms"] = wall_ms;
    return j;
}

inline Json asymptotic_record(const Params& p, double wall_ms) {
    Json j = base_record("asymptotic", p, "asymptotic");
    const double log10_count = asymptotic_count_log10(p);
    j["log10_count"] = log10_count;
    if (log10_count < 15.0)
        j["count_approx"] = std::pow(10.0, log10_count);
    const GrowthParams g = growth_check(p, 1e-9);
    j["rigor"] = {{"exact", false},
                  {"growth_ok", g.growth_ok},
                  {"drake", p.drake_flag}};
    if (p.k < 3) j["note"] = "k < 3 is outside the stated hypothesis of the formula";
    j["wall_ms"] = wall_ms;
    return j;
}

inline Json bounds_record(const Params& p, const BoundsReport& r, double wall_ms) {
    Json j = base_record("bounds", p, "theorem-bounds");
    j["delta"] = r.delta;
    j["L"] = r.L;
    j["U"] = r.U;
    j["D1"] = r.D1;
    j["D2"] = r.D2;
    j["prefactor"] = r.prefactor;
    j["prefactor_log10"] = r.prefactor_log10;
    j["remainder"] = r.remainder;
    j["lower"] = r.lower;
    j["upper"] = r.upper;
    j["asymptotic_log10"] = r.asymptotic_log10;
    j["parity_case"] = r.parity_case;
    j["rigor"] = {{"rigorous", r.rigorous},
                  {"delta_ok", r.delta_ok},
                  {"t_ok", r.t_ok},
                  {"growth_ok", r.growth_ok}};
    j["wall_ms"] = wall_ms;
    return j;
}

inline Json lattice_record(const Params& p, std::uint64_t size, bool verified,
                           double max_hom_defect, double max_row_defect, double wall_ms) {
    Json j = base_record("lattice", p, "lattice");
    j["size"] = size;
    j["verified"] = verified;
    j["max_hom_defect"] = max_hom_defect;
    j["max_row_defect"] = max_row_defect;
    j["rigor"] = {{"exact", false}, {"tolerance", 1e-9}};
    j["wall_ms"] = wall_ms;
    return j;
}

inline Json integrate_record(const Params& p, const SandwichReport& r,
                             double gaussian_integral, double wall_ms) {
    Json j = base_record("integrate", p, "quadrature");
    j["delta"] = r.delta;
    j["t"] = r.t;
    j["grid_per_axis"] = r.grid_per_axis;
    j["box_integral"] = r.box_integral;
    j["imag_over_real"] = r.imag_over_real;
    j["gaussian_integral"] = gaussian_integral;
    j["sandwich"] = {{"lower", r.lower_bound},
                     {"upper", r.upper_bound},
                     {"integral_ok", r.integral_ok}};
    j["pointwise"] = {{"points_checked", r.points_checked},
                      {"real_violations", r.real_violations},
                      {"imag_violations", r.imag_violations},
                      {"lower_violations", r.lower_violations},
                      {"max_eps", r.max_eps},
                      {"eps_bound", r.eps_bound},
                      {"max_imag", r.max_imag},
                      {"imag_bound", r.imag_bound},
                      {"min_real", r.min_real}};
    j["rigor"] = {{"exact", false}, {"quadrature", true}};
    j["wall_ms"] = wall_ms;
    return j;
}

}  // namespace diffmat
