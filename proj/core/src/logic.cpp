#include "hqr/logic.hpp"

#include "hqr/coherent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace hqr {

namespace {

int mod(long long a, int d) { return static_cast<int>(((a % d) + d) % d); }

std::size_t ipow(int d, int n) {
  std::size_t r = 1;
  for (int i = 0; i < n; ++i) r *= static_cast<std::size_t>(d);
  return r;
}

// Digits of `index` in base d, system 0 first.
std::vector<int> digits(std::size_t index, int d, int n) {
  std::vector<int> out(n);
  for (int s = n - 1; s >= 0; --s) {
    out[s] = static_cast<int>(index % d);
    index /= d;
  }
  return out;
}

std::size_t compose(std::span<const int> dig, int d) {
  std::size_t idx = 0;
  for (int v : dig) idx = idx * d + static_cast<std::size_t>(v);
  return idx;
}

void require_dimension(int d, const char* what) {
  if (d < 2) throw std::invalid_argument(std::string(what) + ": d must be >= 2");
}

ComplexMatrix hadamard(int d) {
  ComplexMatrix h(d, d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k) {
    for (int x = 0; x < d; ++x) h(k, x) = s * root_of_unity(d, static_cast<long long>(k) * x);
  }
  return h;
}

ComplexMatrix shift_power(int d, int power) {
  ComplexMatrix m(d, d);
  for (int k = 0; k < d; ++k) m(mod(k + power, d), k) = 1.0;
  return m;
}

ComplexMatrix clock_power(int d, int power) {
  ComplexMatrix m(d, d);
  for (int k = 0; k < d; ++k) m(k, k) = root_of_unity(d, static_cast<long long>(k) * power);
  return m;
}

ComplexMatrix canonical_cphase(int d) {
  ComplexMatrix m(static_cast<std::size_t>(d) * d, static_cast<std::size_t>(d) * d);
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) m(x * d + y, x * d + y) = root_of_unity(d, -static_cast<long long>(x) * y);
  }
  return m;
}

ComplexMatrix cshift_matrix(int d) {
  const std::size_t n = static_cast<std::size_t>(d) * d;
  ComplexMatrix m(n, n);
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) m(mod(x - y, d) * d + y, x * d + y) = 1.0;
  }
  return m;
}

}  // namespace

QuditGate::QuditGate(int d, int arity, ComplexMatrix matrix, double tol)
    : d_(d), arity_(arity), matrix_(std::move(matrix)) {
  require_dimension(d, "QuditGate");
  if (arity < 1 || !matrix_.is_square() || matrix_.rows() != ipow(d, arity)) {
    throw std::invalid_argument("QuditGate: matrix size does not match d^arity");
  }
  const double defect = unitarity_defect(matrix_);
  if (defect > tol) throw NumericalError("QuditGate: matrix is not unitary (defect " + std::to_string(defect) + ")");
}

ComplexVector bell_state(int d, int k, int j) {
  require_dimension(d, "bell_state");
  if (k < 0 || k >= d || j < 0 || j >= d) throw std::invalid_argument("bell_state: label out of range");
  ComplexVector v(static_cast<std::size_t>(d) * d, Complex{0.0, 0.0});
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int y = 0; y < d; ++y) v[y * d + mod(y - j, d)] = s * root_of_unity(d, static_cast<long long>(k) * y);
  return v;
}

std::vector<BellLabel> bell_labels(int d) {
  std::vector<BellLabel> out;
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < d; ++j) out.push_back({k, j});
  }
  return out;
}

GateSet gates(int d) {
  require_dimension(d, "gates");
  const std::size_t n2 = static_cast<std::size_t>(d) * d;
  ComplexMatrix spin(n2, n2);
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      const double sx = (2.0 * x - d + 1.0) / 2.0;
      const double sy = (2.0 * y - d + 1.0) / 2.0;
      spin(x * d + y, x * d + y) = std::polar(1.0, -2.0 * std::numbers::pi * sx * sy / d);
    }
  }
  return GateSet{QuditGate(d, 1, shift_power(d, 1)), QuditGate(d, 1, clock_power(d, 1)),
                 QuditGate(d, 1, hadamard(d)), QuditGate(d, 2, canonical_cphase(d)),
                 QuditGate(d, 2, std::move(spin))};
}

QuditGate cshift(int d) {
  require_dimension(d, "cshift");
  return QuditGate(d, 2, cshift_matrix(d));
}

SpinPhaseReconciliation reconcile_cphase_spin(int d) {
  const GateSet g = gates(d);
  // s_x s_y = xy - c(x + y) + c^2 with c = (d - 1) / 2.
  const double c = (d - 1) / 2.0;
  ComplexMatrix local(d, d);
  for (int k = 0; k < d; ++k) local(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * c * k / d);
  const Complex global = std::polar(1.0, -2.0 * std::numbers::pi * c * c / d);
  const ComplexMatrix rebuilt = global * (tensor(local, local) * g.cphase_canonical.matrix());
  return {local, global, max_abs_diff(rebuilt, g.cphase_spin.matrix())};
}

DecompositionCheck cshift_decomposition_check(int d) {
  require_dimension(d, "cshift_decomposition_check");
  const ComplexMatrix h = hadamard(d);
  const ComplexMatrix id = ComplexMatrix::identity(d);
  const ComplexMatrix cp = canonical_cphase(d);
  const ComplexMatrix h1 = tensor(h, id);
  const ComplexMatrix hd1 = tensor(h.adjoint(), id);
  const ComplexMatrix built = hd1 * cp * h1;
  const ComplexMatrix literal = h1 * cp * h1;
  const ComplexMatrix expected = cshift_matrix(d);
  const double residual = max_abs_diff(built, expected);
  return {residual <= 1e-12, residual, max_abs_diff(literal, expected)};
}

ComplexMatrix embed_gate(const ComplexMatrix& gate, int d, int n, std::span<const int> systems) {
  const int k = static_cast<int>(systems.size());
  if (k < 1 || k > n || gate.rows() != ipow(d, k) || !gate.is_square()) {
    throw std::invalid_argument("embed_gate: gate size does not match the target systems");
  }
  for (int s : systems) {
    if (s < 0 || s >= n) throw std::invalid_argument("embed_gate: system index out of range");
  }
  const std::size_t dim = ipow(d, n);
  ComplexMatrix full(dim, dim);
  std::vector<int> sub(k);
  for (std::size_t col = 0; col < dim; ++col) {
    auto dig = digits(col, d, n);
    for (int i = 0; i < k; ++i) sub[i] = dig[systems[i]];
    const std::size_t in = compose(sub, d);
    for (std::size_t out = 0; out < gate.rows(); ++out) {
      const Complex g = gate(out, in);
      if (g == Complex{0.0, 0.0}) continue;
      auto od = digits(out, d, k);
      for (int i = 0; i < k; ++i) dig[systems[i]] = od[i];
      full(compose(dig, d), col) += g;
    }
  }
  return full;
}

ComplexMatrix reduce_to(const ComplexMatrix& rho, int d, int n, std::span<const int> keep) {
  const std::size_t dim = ipow(d, n);
  if (!rho.is_square() || rho.rows() != dim) throw std::invalid_argument("reduce_to: dimension mismatch");
  std::vector<int> traced;
  for (int s = 0; s < n; ++s) {
    if (std::find(keep.begin(), keep.end(), s) == keep.end()) traced.push_back(s);
  }
  const int nk = static_cast<int>(keep.size());
  const int nt = static_cast<int>(traced.size());
  const std::size_t dk = ipow(d, nk);
  const std::size_t dt = ipow(d, nt);
  ComplexMatrix out(dk, dk);
  std::vector<int> full(n);
  auto place = [&](std::size_t kept_idx, std::size_t traced_idx) {
    const auto kd = digits(kept_idx, d, nk);
    const auto td = digits(traced_idx, d, nt);
    for (int i = 0; i < nk; ++i) full[keep[i]] = kd[i];
    for (int i = 0; i < nt; ++i) full[traced[i]] = td[i];
    return compose(full, d);
  };
  for (std::size_t r = 0; r < dk; ++r) {
    for (std::size_t c = 0; c < dk; ++c) {
      Complex acc{0.0, 0.0};
      for (std::size_t t = 0; t < dt; ++t) acc += rho(place(r, t), place(c, t));
      out(r, c) = acc;
    }
  }
  return out;
}

ComplexMatrix phase_mixture_state(const PhaseMixtureWeights& w) {
  const int d = w.d();
  const std::size_t n = static_cast<std::size_t>(d) * d;
  ComplexMatrix rho(n, n);
  for (int j = 0; j < d; ++j) {
    if (w[j] == 0.0) continue;
    const auto phi = bell_state(d, mod(-j, d), 0);
    rho += w[j] * ComplexMatrix::outer(phi, phi);
  }
  return rho;
}

std::vector<double> phase_mixture_populations(const ComplexMatrix& rho, int d) {
  std::vector<double> p(d);
  for (int j = 0; j < d; ++j) {
    const auto phi = bell_state(d, mod(-j, d), 0);
    p[j] = inner(phi, rho.apply(phi)).real();
  }
  return p;
}

PurificationResult purify_step(const PhaseMixtureWeights& w) {
  double success = 0.0;
  for (double p : w.p()) success += p * p;
  std::vector<double> next(w.p().size());
  for (std::size_t j = 0; j < next.size(); ++j) next[j] = w.p()[j] * w.p()[j] / success;
  return {success, PhaseMixtureWeights(std::move(next))};
}

ComplexMatrix purification_prerotation(int d) {
  const ComplexMatrix h = hadamard(d);
  return tensor(h.adjoint(), h);
}

PurificationResult purify_circuit_sim(int d, const PhaseMixtureWeights& w) {
  if (d != 2 && d != 3) throw std::invalid_argument("purify_circuit_sim: supported only for d in {2, 3}");
  if (w.d() != d) throw std::invalid_argument("purify_circuit_sim: weight vector has the wrong dimension");
  const ComplexMatrix rot = purification_prerotation(d);
  const ComplexMatrix copy = rot * phase_mixture_state(w) * rot.adjoint();
  // Systems: copy one = (0, 1), copy two = (2, 3); 0 and 2 share a node.
  ComplexMatrix rho = tensor(copy, copy);
  const ComplexMatrix cs = cshift_matrix(d);
  const int node_a[] = {0, 2};
  const int node_b[] = {1, 3};
  const ComplexMatrix u = embed_gate(cs, d, 4, node_b) * embed_gate(cs, d, 4, node_a);
  rho = u * rho * u.adjoint();

  // Keep equal outcomes on the measured targets (systems 0 and 1).
  const std::size_t dim = rho.rows();
  const std::size_t block = static_cast<std::size_t>(d) * d;
  std::vector<bool> kept(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t first = i / block;
    kept[i] = (first / d) == (first % d);
  }
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (!kept[r] || !kept[c]) rho(r, c) = 0.0;
    }
  }
  const double success = rho.trace().real();
  if (!(success > 0.0)) throw NumericalError("purify_circuit_sim: postselection has zero probability");
  const int keep[] = {2, 3};
  ComplexMatrix out = reduce_to(rho, d, 4, keep);
  out *= 1.0 / success;
  out = rot.adjoint() * out * rot;
  auto pops = phase_mixture_populations(out, d);
  return {success, PhaseMixtureWeights(std::move(pops))};
}

PhaseMixtureWeights swap_phase_mixture(const PhaseMixtureWeights& a, const PhaseMixtureWeights& b) {
  const int d = a.d();
  if (b.d() != d) throw std::invalid_argument("swap_phase_mixture: dimension mismatch");
  std::vector<double> w(d, 0.0);
  for (int m = 0; m < d; ++m) {
    for (int j = 0; j < d; ++j) w[m] += a[j] * b[mod(m - j, d)];
  }
  double sum = 0.0;
  for (double x : w) sum += x;
  for (double& x : w) x /= sum;
  return PhaseMixtureWeights(std::move(w));
}

PhaseMixtureWeights swap_chain(const PhaseMixtureWeights& w, int segments) {
  if (segments < 1) throw std::invalid_argument("swap_chain: need at least one segment");
  PhaseMixtureWeights acc = w;
  for (int s = 1; s < segments; ++s) acc = swap_phase_mixture(acc, w);
  return acc;
}

BellMeasurement bell_measure(const DensityMatrix& state) {
  const std::size_t dim = state.dim();
  int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim))));
  if (d < 2 || static_cast<std::size_t>(d) * d != dim) {
    throw std::invalid_argument("bell_measure: state is not a two-qudit operator");
  }
  // Control on the first qudit: |x, y> -> |x, y - x>.
  const int order[] = {1, 0};
  const ComplexMatrix u =
      tensor(hadamard(d), ComplexMatrix::identity(d)) * embed_gate(cshift_matrix(d), d, 2, order);
  const ComplexMatrix rotated = u * state.matrix() * u.adjoint();
  BellMeasurement out{d, std::vector<double>(dim, 0.0)};
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const double p = std::max(0.0, rotated(a * d + b, a * d + b).real());
      out.probabilities[mod(-a, d) * d + mod(-b, d)] += p;
    }
  }
  return out;
}

ComplexMatrix swap_correction(int d, const BellLabel& label) {
  return clock_power(d, label.k) * shift_power(d, label.j);
}

std::vector<SwapOutcome> swap_circuit_sim(const PhaseMixtureWeights& a, const PhaseMixtureWeights& b) {
  const int d = a.d();
  if (b.d() != d) throw std::invalid_argument("swap_circuit_sim: dimension mismatch");
  if (d > 4) throw std::invalid_argument("swap_circuit_sim: brute force limited to d <= 4");
  // Pairs (0, 1) and (2, 3); the Bell measurement acts on 1 and 2.
  ComplexMatrix rho = tensor(phase_mixture_state(a), phase_mixture_state(b));
  const int inner_pair[] = {1, 2};
  const int reversed[] = {2, 1};
  const ComplexMatrix u = embed_gate(tensor(hadamard(d), ComplexMatrix::identity(d)), d, 4, inner_pair) *
                          embed_gate(cshift_matrix(d), d, 4, reversed);
  rho = u * rho * u.adjoint();

  const int outer_pair[] = {0, 3};
  std::vector<SwapOutcome> out;
  const std::size_t dim = rho.rows();
  for (int x = 0; x < d; ++x) {
    for (int y = 0; y < d; ++y) {
      ComplexMatrix proj = rho;
      for (std::size_t r = 0; r < dim; ++r) {
        const auto dr = digits(r, d, 4);
        for (std::size_t c = 0; c < dim; ++c) {
          const auto dc = digits(c, d, 4);
          if (dr[1] != x || dr[2] != y || dc[1] != x || dc[2] != y) proj(r, c) = 0.0;
        }
      }
      const double p = proj.trace().real();
      const BellLabel label{mod(-x, d), mod(-y, d)};
      ComplexMatrix pair = reduce_to(proj, d, 4, outer_pair);
      if (p <= 0.0) continue;
      pair *= 1.0 / p;
      const ComplexMatrix fix = tensor(ComplexMatrix::identity(d), swap_correction(d, label));
      pair = fix * pair * fix.adjoint();
      auto pops = phase_mixture_populations(pair, d);
      out.push_back({label, p, PhaseMixtureWeights(std::move(pops))});
    }
  }
  return out;
}

}  // namespace hqr
