#include "peterlin/diagnostics.hpp"

#include <cstdio>

namespace peterlin {

const char* diagnostics_csv_header() {
    return "step,time,kinetic_energy,trC_mean,mass_min,mass_max,entropy,fisher,"
           "moment4_max,min_psi_node,negativity_mass,closure_err";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void append_opt(std::string& s, const std::optional<double>& v) {
    s += ',';
    if (v) s += format_double(*v);
}

}  // namespace

std::string to_csv(const DiagnosticsRow& r) {
    std::string s = std::to_string(r.step);
    s += ',';
    s += format_double(r.time);
    s += ',';
    s += format_double(r.kinetic_energy);
    s += ',';
    s += format_double(r.trC_mean);
    append_opt(s, r.mass_min);
    append_opt(s, r.mass_max);
    append_opt(s, r.entropy);
    append_opt(s, r.fisher);
    append_opt(s, r.moment4_max);
    append_opt(s, r.min_psi_node);
    append_opt(s, r.negativity_mass);
    append_opt(s, r.closure_err);
    return s;
}

}  // namespace peterlin
