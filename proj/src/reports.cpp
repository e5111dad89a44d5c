#include "gradenorm/reports.hpp"

#include <cinttypes>
#include <cstdio>

namespace gradenorm {

namespace {

template <class S>
Json element_json_impl(const Element<S>& e) {
  Json terms = Json::array();
  for (const auto& [m, c] : e.terms()) {
    Json t;
    t["word"] = m.word;
    t["re"] = ScalarTraits<S>::to_double(ScalarTraits<S>::real(c));
    t["im"] = ScalarTraits<S>::to_double(ScalarTraits<S>::imag(c));
    terms.push_back(std::move(t));
  }
  return terms;
}

template <class S>
Json spec_json_impl(const AlgebraSpec<S>& spec) {
  Json j;
  j["kind"] = std::string(kind_name(spec.kind));
  j["generators"] = spec.generators;
  j["truncation"] = spec.truncation;
  j["field"] = spec.field == Field::Real ? "real" : "complex";
  if (spec.kind == Kind::Paired) {
    j["chi"] = spec.chi;
    Json omega = Json::array();
    for (int i = 1; i <= spec.generators; ++i) {
      Json row = Json::array();
      for (int k = 1; k <= spec.generators; ++k) {
        const auto& w = spec.omega(i, k);
        if constexpr (ScalarTraits<S>::is_complex) {
          if (ScalarTraits<S>::imag(w) != 0.0)
            row.push_back(Json{{"re", w.real()}, {"im", w.imag()}});
          else
            row.push_back(w.real());
        } else {
          row.push_back(ScalarTraits<S>::to_double(w));
        }
      }
      omega.push_back(std::move(row));
    }
    j["omega"] = std::move(omega);
  }
  if (spec.kind == Kind::Super) j["even_count"] = spec.even_count;
  return j;
}

template <class S>
Json norm_json_impl(const NormSpec<S>& ns) {
  Json j = weights_to_json(ns.weights);
  j["gram"] = std::string(gram_name(ns.gram));
  if (ns.twist) {
    j["gamma_exponent"] = ns.twist->exponent;
    if (ns.twist->op.is_diagonal()) {
      Json diag = Json::array();
      for (const auto& v : ns.twist->op.raw())
        diag.push_back(ScalarTraits<S>::to_double(v));
      j["gamma_diag"] = std::move(diag);
    } else {
      Json mat = Json::array();
      const int d = ns.twist->op.dim();
      for (int i = 0; i < d; ++i) {
        Json row = Json::array();
        for (int k = 0; k < d; ++k)
          row.push_back(ScalarTraits<S>::to_double(ns.twist->op.entry(i, k)));
        mat.push_back(std::move(row));
      }
      j["gamma_matrix"] = std::move(mat);
    }
  }
  return j;
}

template <class S>
Json witness_json_impl(const WitnessReport<S>& w) {
  Json j;
  j["found"] = w.found;
  j["a"] = element_json_impl(w.a);
  j["b"] = element_json_impl(w.b);
  j["lambda_star"] = w.lambda_star;
  j["ratio"] = w.ratio;
  j["closed_form_ratio"] = w.closed_form_ratio;
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

}  // namespace

Json element_to_json(const Element<double>& e) { return element_json_impl(e); }
Json element_to_json(const Element<std::complex<double>>& e) { return element_json_impl(e); }

Json spec_to_json(const AlgebraSpec<double>& spec) { return spec_json_impl(spec); }
Json spec_to_json(const AlgebraSpec<std::complex<double>>& spec) {
  return spec_json_impl(spec);
}

Json weights_to_json(const WeightSpec& w) {
  Json j;
  j["w_family"] = std::string(weight_family_name(w.family));
  if (w.family == WeightSpec::Family::SigmaRhoS) {
    j["sigma"] = w.sigma;
    j["rho"] = w.rho;
    j["s"] = w.s;
  }
  if (w.family == WeightSpec::Family::Explicit) j["weights"] = w.values;
  return j;
}

Json norm_to_json(const NormSpec<double>& ns) { return norm_json_impl(ns); }
Json norm_to_json(const NormSpec<std::complex<double>>& ns) { return norm_json_impl(ns); }

Json witness_to_json(const WitnessReport<double>& w) { return witness_json_impl(w); }
Json witness_to_json(const WitnessReport<std::complex<double>>& w) {
  return witness_json_impl(w);
}

Json audit_to_json(const AuditReport& a) {
  Json j;
  j["grid_bound"] = a.grid_bound;
  j["delta_min"] = a.delta_min;
  j["argmax"] = Json{{"p", a.argmax_p}, {"q", a.argmax_q}};
  j["implied_gamma"] = kSqrt3 * std::max(1.0, a.delta_min);
  j["target_gamma"] = a.target_gamma;
  j["tolerance"] = a.tolerance;
  j["pass"] = a.pass;
  return j;
}

Json ratio_to_json(const RatioReport& r) {
  Json j;
  j["seed"] = r.seed;
  j["count"] = r.count;
  j["max_ratio"] = r.max_ratio;
  j["argmax"] = Json{{"trial", r.argmax_trial},
                     {"degree_a", r.argmax_degree_a},
                     {"degree_b", r.argmax_degree_b}};
  j["quantiles"] = Json{{"q50", r.q50}, {"q90", r.q90}, {"q99", r.q99}};
  return j;
}

Json best_constant_to_json(const BestConstantReport& b) {
  Json j;
  j["gamma_best"] = b.gamma_best;
  j["iterations"] = b.iterations;
  j["residual"] = b.residual;
  j["converged"] = b.converged;
  j["domain_dim"] = b.domain_dim;
  j["range_dim"] = b.range_dim;
  return j;
}

std::string ratio_csv(const RatioReport& r) {
  std::string out = "trial,degree_a,degree_b,ratio\n";
  char buf[128];
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%d,%d,%d,%.17g\n", row.trial, row.degree_a, row.degree_b,
                  row.ratio);
    out += buf;
  }
  return out;
}

}  // namespace gradenorm
