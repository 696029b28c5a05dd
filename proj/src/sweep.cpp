#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <thread>

#include "giantscatter/analytic.hpp"
#include "giantscatter/bethe.hpp"
#include "giantscatter/continuous.hpp"
#include "giantscatter/sweep.hpp"

namespace giantscatter {

using nlohmann::json;

namespace {

enum class Route { full, eff, effsolve, cont, cont_printed };

struct Column {
  char kind = 'T';  // T, R, I (model A); S (B); P (C)
  int in = 1;
  int out = 2;
  bool conversion = false;  // S/P: sum of ports 3 and 4
  Route route = Route::eff;
};

Column parse_column(const std::string& name) {
  const auto cut = name.find('_');
  const std::string obs = name.substr(0, cut);
  const std::string route = name.substr(cut + 1);
  Column c;
  if (route == "full") c.route = Route::full;
  else if (route == "eff") c.route = Route::eff;
  else if (route == "effsolve") c.route = Route::effsolve;
  else if (route == "cont") c.route = Route::cont;
  else c.route = Route::cont_printed;
  c.kind = obs[0];
  if (obs == "I") return c;
  if (obs == "Sconv") {
    c.conversion = true;
  } else if (obs.size() == 6 && obs.substr(2) == "conv") {
    c.in = obs[1] - '0';
    c.conversion = true;
  } else {
    c.in = obs[1] - '0';
    c.out = obs[2] - '0';
  }
  return c;
}

void apply(ScatterParams& p, double& lambda, bool follows, const std::string& name, double v) {
  if (name == "delta_ka") p.delta_ka_MHz = v;
  else if (name == "theta1") p.drive1.local_phase_rad = v;
  else if (name == "theta2") p.drive2->local_phase_rad = v;
  else if (name == "phi_a") p.mode_a.propagation_phase_rad = v;
  else if (name == "phi_b") p.mode_b->propagation_phase_rad = v;
  else if (name == "Delta_c1") {
    p.drive1.detuning_MHz = v;
    if (follows && p.drive2) p.drive2->detuning_MHz = -v;
  } else if (name == "Omega_c1") p.drive1.rabi_MHz = v;
  else if (name == "Omega_c2") p.drive2->rabi_MHz = v;
  else if (name == "gamma") p.gamma_MHz = v;
  else if (name == "Lambda") lambda = v;
}

void apply_axis(ScatterParams& p, double& lambda, bool follows, const SweepAxis& axis, double v) {
  apply(p, lambda, follows, axis.name, v);
  for (const auto& n : axis.also) apply(p, lambda, follows, n, v);
}

// Overlaps only change when Lambda, phi_a, theta1 or Upsilon change, which
// along a delta_ka axis is never; keep the last value per worker.
struct OverlapCache {
  bool valid[2] = {false, false};
  double key[2][4] = {};
  OverlapIntegrals value[2];

  const OverlapIntegrals& get(bool printed, double lambda, double phi, double theta, double ups) {
    const int s = printed ? 1 : 0;
    const double k[4] = {lambda, phi, theta, ups};
    if (!valid[s] || !std::equal(k, k + 4, key[s])) {
      value[s] = printed ? overlaps_closed(lambda, phi, theta, ups) : overlaps_quadrature(lambda, phi, theta, ups);
      std::copy(k, k + 4, key[s]);
      valid[s] = true;
    }
    return value[s];
  }
};

class PointEvaluator {
 public:
  PointEvaluator(ModelFamily family, const ScatterParams& params, double lambda, OverlapCache& cache)
      : family_(family), p_(params), lambda_(lambda), cache_(cache) {}

  double value(const Column& c) {
    switch (family_) {
      case ModelFamily::A: return model_a(c);
      case ModelFamily::B: return model_b(c);
      case ModelFamily::C: return model_c(c);
    }
    return 0.0;
  }

 private:
  ModelKind kind_for(Route r) const {
    const bool full = r == Route::full;
    switch (family_) {
      case ModelFamily::A: return full ? ModelKind::A_full : ModelKind::A_eff;
      case ModelFamily::B: return full ? ModelKind::B_full : ModelKind::B_eff;
      case ModelFamily::C: return full ? ModelKind::C_full : ModelKind::C_eff;
    }
    return ModelKind::A_eff;
  }

  const ScatteringSolution& solution(Route r, int port) {
    auto& slot = solved_[r == Route::full ? 0 : 1][port - 1];
    if (!slot) slot = scatter(kind_for(r), p_, port_from_number(port));
    return *slot;
  }

  double solved(Route r, int in, int out) { return solution(r, in).probability(port_from_number(out)); }

  double transmission_a(Route r, Direction d) {
    switch (r) {
      case Route::full:
      case Route::effsolve:
        return d == Direction::right ? solved(r, 1, 2) : solved(r, 2, 1);
      case Route::eff:
        return t_eff_A(p_, d);
      case Route::cont:
      case Route::cont_printed: {
        const double ups = effective_rate(p_.mode_a.decay_MHz, p_.drive1.rabi_MHz, p_.drive1.detuning_MHz);
        const auto& o = cache_.get(r == Route::cont_printed, lambda_, p_.mode_a.propagation_phase_rad,
                                   p_.drive1.local_phase_rad, ups);
        return t_continuous(p_, o, d);
      }
    }
    return 0.0;
  }

  double model_a(const Column& c) {
    if (c.kind == 'R') return solved(c.route, c.in, c.out);
    if (c.kind == 'I')
      return contrast_ratio(transmission_a(c.route, Direction::right), transmission_a(c.route, Direction::left));
    return transmission_a(c.route, c.in == 1 ? Direction::right : Direction::left);
  }

  double model_b(const Column& c) {
    if (c.route == Route::eff) {
      if (!formula_) formula_ = s_eff_B(p_);
      return c.conversion ? formula_->total_conversion() : formula_->to_port(Port::p1, port_from_number(c.out));
    }
    if (c.conversion) return solved(c.route, 1, 3) + solved(c.route, 1, 4);
    return solved(c.route, 1, c.out);
  }

  double model_c(const Column& c) {
    if (c.route == Route::eff) {
      auto& slot = formula_c_[c.in - 1];
      if (!slot) slot = p_eff_C(p_, port_from_number(c.in));
      return c.conversion ? slot->total_conversion() : slot->to_port(port_from_number(c.in), port_from_number(c.out));
    }
    if (c.conversion) return solved(c.route, c.in, 3) + solved(c.route, c.in, 4);
    return solved(c.route, c.in, c.out);
  }

  ModelFamily family_;
  ScatterParams p_;
  double lambda_;
  OverlapCache& cache_;
  std::optional<ScatteringSolution> solved_[2][2];
  std::optional<PortProbabilities> formula_;
  std::optional<PortProbabilities> formula_c_[2];
};

struct PointFailure {
  std::size_t index = std::numeric_limits<std::size_t>::max();
  std::string message;
  bool numerical = false;
};

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec, int jobs) {
  const std::size_t n1 = static_cast<std::size_t>(spec.axis1.count);
  const std::size_t n2 = spec.axis2 ? static_cast<std::size_t>(spec.axis2->count) : 1;
  const std::size_t total = n1 * n2;

  std::vector<Column> columns;
  for (const auto& name : spec.outputs) columns.push_back(parse_column(name));

  SweepTable table;
  table.columns.push_back(spec.axis1.name);
  if (spec.axis2) table.columns.push_back(spec.axis2->name);
  for (const auto& name : spec.outputs) table.columns.push_back(name);
  table.rows.assign(total, {});

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs > 0 ? jobs : 1, total));
  std::vector<PointFailure> failures(workers);

  auto work = [&](std::size_t w) {
    OverlapCache cache;
    const std::size_t begin = total * w / workers;
    const std::size_t end = total * (w + 1) / workers;
    for (std::size_t i = begin; i < end; ++i) {
      const int i1 = static_cast<int>(i % n1);
      const int i2 = static_cast<int>(i / n1);
      ScatterParams p = spec.params;
      double lambda = spec.lambda;
      std::vector<double>& row = table.rows[i];
      row.reserve(table.columns.size());
      if (spec.axis2) {
        apply_axis(p, lambda, spec.delta_c2_follows, *spec.axis2, spec.axis2->value(i2));
      }
      const double v1 = spec.axis1.value(i1);
      apply_axis(p, lambda, spec.delta_c2_follows, spec.axis1, v1);
      row.push_back(v1);
      if (spec.axis2) row.push_back(spec.axis2->value(i2));
      try {
        PointEvaluator eval(spec.family, p, lambda, cache);
        for (const auto& c : columns) row.push_back(eval.value(c));
      } catch (const NumericalError& e) {
        failures[w] = {i, e.what(), true};
        return;
      } catch (const std::exception& e) {
        failures[w] = {i, e.what(), false};
        return;
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  const PointFailure* first = nullptr;
  for (const auto& f : failures) {
    if (f.index != std::numeric_limits<std::size_t>::max() && (!first || f.index < first->index)) first = &f;
  }
  if (first) {
    std::ostringstream msg;
    msg << "at " << spec.axis1.name << "=" << format_number(spec.axis1.value(static_cast<int>(first->index % n1)));
    if (spec.axis2)
      msg << ", " << spec.axis2->name << "=" << format_number(spec.axis2->value(static_cast<int>(first->index / n1)));
    msg << ": " << first->message;
    if (first->numerical) throw NumericalError(msg.str());
    throw ConfigError(msg.str());
  }

  table.provenance = {{"tool", "giantscatter"},
                      {"version", kToolVersion},
                      {"row_order", spec.axis2 ? "axis2 outer, axis1 inner" : "axis1"},
                      {"config", spec.resolved()},
                      {"warnings", regime_warnings(spec.params, spec.family)}};
  return table;
}

std::string emit(const SweepTable& table, TableFormat format) {
  if (format == TableFormat::json) {
    json doc = {{"columns", table.columns}, {"rows", table.rows}, {"provenance", table.provenance}};
    return doc.dump() + "\n";
  }
  std::string out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out += ',';
    out += table.columns[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

SweepTable parse_table_json(const std::string& text) {
  const json doc = json::parse(text);
  SweepTable table;
  table.columns = doc.at("columns").get<std::vector<std::string>>();
  table.rows = doc.at("rows").get<std::vector<std::vector<double>>>();
  if (doc.contains("provenance")) table.provenance = doc.at("provenance");
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw std::invalid_argument("table is not rectangular");
  }
  return table;
}

}  // namespace giantscatter
