#ifndef MUREC_REPORT_HPP
#define MUREC_REPORT_HPP

#include <optional>
#include <string>

#include "murec/density.hpp"
#include "murec/diagnostics.hpp"
#include "murec/json_writer.hpp"
#include "murec/solver.hpp"

// JSON fragments shared by the CLI subcommands. Every report uses snake_case
// keys, a stable field set, and explicit nulls for absent sections.

namespace murec {

std::string_view theorem_name(Theorem t);
std::string_view termination_name(Termination t);
std::string_view density_name(DensityKind k);
std::string_view data_term_name(DataTermKind k);

void write_energy(JsonWriter& w, const EnergyBreakdown& e);
void write_trace(JsonWriter& w, const SolverTrace& trace);
void write_diagnostics(JsonWriter& w, const std::optional<DiagnosticsReport>& d);

std::string exponent_report_json(const ExponentReport& r);
std::string audit_report_json(DensityKind kind, double mu, double mu_audit,
                              long long samples, const AuditReport& r);
std::string error_json(int exit_code, const std::string& kind,
                       const std::string& message);

}  // namespace murec

#endif
