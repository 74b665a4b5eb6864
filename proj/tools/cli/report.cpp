#include "report.hpp"

#include <cstdio>
#include <cstdlib>

namespace nosig::cli {

using nlohmann::json;

double sig12(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

json bloch_json(const BlochVector &v) { return json::array({sig12(v.x), sig12(v.y), sig12(v.z)}); }

json classification_json(const MapClassification &c) {
    json j;
    j["region"] = to_string(c.region);
    j["is_linear"] = c.is_linear;
    j["linearity_deviation"] = sig12(c.linearity_deviation);
    j["is_trace_preserving"] = c.is_trace_preserving;
    j["trace_deviation"] = sig12(c.trace_deviation);
    j["is_positive"] = c.is_positive;
    j["min_output_eigenvalue"] = sig12(c.min_output_eigenvalue);
    j["positivity_witness"] = c.positivity_witness ? bloch_json(*c.positivity_witness) : json(nullptr);
    if (c.is_completely_positive) {
        j["is_completely_positive"] = *c.is_completely_positive;
    } else {
        j["is_completely_positive"] = "not_applicable";
    }
    j["min_choi_eigenvalue"] = c.min_choi_eigenvalue ? json(sig12(*c.min_choi_eigenvalue)) : json(nullptr);
    return j;
}

json signalling_json(const SignallingReport &r, double threshold) {
    json j;
    j["distance"] = sig12(r.distance);
    j["helstrom_success"] = sig12(r.helstrom_success);
    if (r.conditional_probs) {
        json rows = json::array();
        for (const auto &row : r.conditional_probs->rows) {
            json out = json::array();
            for (double p : row) {
                out.push_back(sig12(p));
            }
            rows.push_back(std::move(out));
        }
        j["conditional_probs"] = std::move(rows);
    } else {
        j["conditional_probs"] = nullptr;
    }
    j["mutual_info_bits"] = sig12(r.mutual_info_bits);
    j["verdict"] = to_string(r.verdict);
    j["threshold"] = sig12(threshold);
    j["warnings"] = r.warnings;
    return j;
}

json fidelity_json(const FidelityReport &f) {
    json j;
    j["average_fidelity"] = sig12(f.average_fidelity);
    j["standard_error"] = sig12(f.standard_error);
    j["analytic_prediction"] = f.analytic_prediction ? json(sig12(*f.analytic_prediction)) : json(nullptr);
    j["exceeds_optimal_bound"] = f.exceeds_optimal_bound;
    j["optimal_bound"] = sig12(kOptimalCloneFidelity);
    j["out_of_range"] = f.out_of_range;
    j["samples"] = f.fidelity_per_input.size();
    return j;
}

} // namespace nosig::cli
