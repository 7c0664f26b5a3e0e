#include "murec/report.hpp"

namespace murec {

std::string_view theorem_name(Theorem t) {
  switch (t) {
    case Theorem::T1_1: return "1.1";
    case Theorem::T1_2: return "1.2";
    case Theorem::T1_3: return "1.3";
    case Theorem::T1_4: return "1.4";
  }
  return "?";
}

std::string_view termination_name(Termination t) {
  return t == Termination::Stationary ? "stationary" : "max_iters";
}

std::string_view density_name(DensityKind k) {
  return k == DensityKind::MuFamily ? "mu-family" : "minimal-surface";
}

std::string_view data_term_name(DataTermKind k) {
  return k == DataTermKind::Quadratic ? "quadratic" : "linear-growth";
}

void write_energy(JsonWriter& w, const EnergyBreakdown& e) {
  w.begin_object();
  w.kv("regularizer", e.regularizer);
  w.kv("fidelity", e.fidelity);
  w.kv("tikhonov", e.tikhonov);
  w.kv("total", e.total);
  w.end_object();
}

void write_trace(JsonWriter& w, const SolverTrace& trace) {
  w.key("stages").begin_array();
  for (const auto& s : trace.stages) {
    w.begin_object();
    w.kv("delta", s.delta);
    w.kv("iterations", s.iterations);
    w.kv("k_delta", s.k_delta);
    w.kv("k_zero", s.k_zero);
    w.kv("grad_max_norm", s.grad_max_norm);
    w.kv("termination", termination_name(s.termination));
    w.end_object();
  }
  w.end_array();
  w.key("trace").begin_array();
  for (const auto& it : trace.iterations) {
    w.begin_object();
    w.kv("stage", it.stage);
    w.kv("iter", it.iter);
    w.kv("regularizer", it.energy.regularizer);
    w.kv("fidelity", it.energy.fidelity);
    w.kv("tikhonov", it.energy.tikhonov);
    w.kv("total", it.energy.total);
    w.kv("grad_max_norm", it.grad_max_norm);
    w.kv("step", it.step);
    w.end_object();
  }
  w.end_array();
}

void write_diagnostics(JsonWriter& w, const std::optional<DiagnosticsReport>& d) {
  if (!d) {
    w.null();
    return;
  }
  w.begin_object();
  w.key("max_principle").begin_object();
  w.kv("sup_u", d->max_principle.sup_u);
  w.kv("sup_u0", d->max_principle.sup_u0);
  w.kv("pass", d->max_principle.pass);
  w.end_object();
  w.key("dual_bound").begin_object();
  w.kv("max_sigma", d->dual_bound.max_sigma);
  w.kv("nu1", d->dual_bound.nu1);
  w.kv("pass", d->dual_bound.pass);
  w.end_object();
  w.key("uniqueness").begin_object();
  w.kv("max_dev_off_d", d->uniqueness.max_dev_off_d);
  w.kv("max_dev_full", d->uniqueness.max_dev_full);
  w.kv("pass", d->uniqueness.pass);
  w.end_object();
  w.key("grad_integrability").begin_array();
  for (const auto& g : d->grad_integrability) {
    w.begin_object();
    w.kv("p", g.p);
    w.kv("norm", g.norm);
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

std::string exponent_report_json(const ExponentReport& r) {
  JsonWriter w;
  w.begin_object();
  w.kv("n", r.n);
  w.kv("mu", r.mu);
  w.kv("theorem", theorem_name(r.theorem));
  w.kv("inpainting", r.inpainting);
  w.kv("mu_bound", r.mu_bound);
  w.kv("admissible", r.admissible);
  w.key("p");
  if (r.p) w.value(*r.p); else w.null();
  w.key("s");
  if (r.s) w.value(*r.s); else w.null();
  w.end_object();
  return w.str();
}

std::string audit_report_json(DensityKind kind, double mu, double mu_audit,
                              long long samples, const AuditReport& r) {
  JsonWriter w;
  w.begin_object();
  w.kv("density", density_name(kind));
  w.kv("mu", mu);
  w.kv("mu_audit", mu_audit);
  w.kv("samples", samples);
  w.kv("nu4_hat", r.nu4_hat);
  w.kv("nu5_hat", r.nu5_hat);
  w.kv("nu4_drift", r.nu4_drift);
  w.kv("nu5_drift", r.nu5_drift);
  w.kv("pass", r.pass);
  w.end_object();
  return w.str();
}

std::string error_json(int exit_code, const std::string& kind,
                       const std::string& message) {
  JsonWriter w;
  w.begin_object();
  w.key("error").begin_object();
  w.kv("exit_code", exit_code);
  w.kv("kind", kind);
  w.kv("message", message);
  w.end_object();
  w.end_object();
  return w.str();
}

}  // namespace murec
