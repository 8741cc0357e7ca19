#include "infext/process.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <random>

#include "infext/measures.hpp"
#include "infext/vladimirov.hpp"

namespace infext {

namespace {

using Engine = std::mt19937_64;

Engine path_engine(std::uint64_t seed, std::uint64_t path) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(path), static_cast<std::uint32_t>(path >> 32)};
  return Engine(seq);
}

// Distribution code is spelled out so that streams do not depend on the standard library vendor.
double uniform01(Engine& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

std::uint64_t uniform_below(Engine& g, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    std::uint64_t r = g();
    if (r >= threshold) return r % n;
  }
}

double exponential(Engine& g, double rate) { return -std::log1p(-uniform01(g)) / rate; }

std::uint64_t ipow_u(long p, int k) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= static_cast<std::uint64_t>(p);
  return r;
}

int ceil_div(int a, int b) { return a >= 0 ? (a + b - 1) / b : -((-a) / b); }

// Uniform coset of {w(x) = w} in the sampling quotient: uniform on pi^w O / pi^hi O, rejecting pi^{w+1} O.
std::uint64_t sample_shell(const BallQuotient& G, int w, Engine& g) {
  const int d = G.dim();
  std::vector<std::uint64_t> dig(static_cast<size_t>(d));
  for (;;) {
    for (int i = 0; i < d; ++i) {
      int span = G.upper(i) - G.lower(i);
      int k = std::clamp(ceil_div(w - G.basis_valuation(i), G.e()) - G.lower(i), 0, span);
      std::uint64_t step = ipow_u(G.p(), k);
      dig[static_cast<size_t>(i)] = step * uniform_below(g, G.radix(i) / step);
    }
    std::uint64_t c = G.index(dig);
    if (G.valuation(c) == w) return c;
  }
}

struct PathState {
  std::uint64_t jumps = 0;
  std::uint64_t terminal = 0;
};

template <class OnEvent>
PathState run_path(const JumpLaw& law, double t_end, Engine& g, OnEvent&& on_event) {
  const BallQuotient& G = law.space->group();
  PathState st;
  if (law.rate <= 0) return st;
  std::vector<double> cdf(law.shell_probability.size());
  double acc = 0;
  for (size_t i = 0; i < cdf.size(); ++i) cdf[i] = (acc += law.shell_probability[i]);
  double time = 0;
  for (;;) {
    time += exponential(g, law.rate);
    if (time > t_end) break;
    double u = uniform01(g) * acc;
    size_t s = static_cast<size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    s = std::min(s, cdf.size() - 1);
    std::uint64_t c = sample_shell(G, law.shell_valuation[s], g);
    st.terminal = G.add(st.terminal, c);
    ++st.jumps;
    on_event(time, c);
  }
  return st;
}

}  // namespace

JumpLaw build_jump_law(const FieldPtr& field, int n, double delta, double alpha, int depth, double rate_cap) {
  if (!(delta > 0) || delta > 1) throw DomainError("build_jump_law: delta must lie in (0, 1]");
  const Tower& T = field->tower();
  const LevelData& L = T.level(n);
  ShellSeries shells = levy_total_outside(T, n, delta, alpha);
  JumpLaw law;
  law.level = n;
  law.delta = delta;
  law.alpha = alpha;
  law.rate = shells.total();
  if (!(law.rate <= rate_cap)) throw DomainError("build_jump_law: jump rate exceeds the configured cap");
  for (const Shell& s : shells.shells) {
    law.shell_valuation.push_back(s.index);
    law.shell_probability.push_back(law.rate > 0 ? s.term() / law.rate : 0.0);
  }
  const int w_max = delta_valuation_bound(T, n, delta);
  const int minimal = std::max(1, w_max - L.s0() + 1);
  if (depth == 0) depth = minimal;
  if (depth < minimal) throw DomainError("build_jump_law: sampling quotient too coarse for the shells of V_delta");
  law.space = CylinderSpace::make(field, n, depth);
  return law;
}

PathSample simulate_path(const JumpLaw& law, double t_end, std::uint64_t seed, std::uint64_t path) {
  if (!(t_end > 0)) throw DomainError("simulate_path: t_end must be positive");
  Engine g = path_engine(seed, path);
  PathSample out;
  out.seed = seed;
  out.path = path;
  out.level = law.level;
  out.resolution = law.resolution();
  PathState st = run_path(law, t_end, g, [&](double time, std::uint64_t c) { out.events.push_back({time, c}); });
  out.terminal = st.terminal;
  return out;
}

PoissonTest poisson_test(const std::vector<std::uint64_t>& hist, double mean, double significance) {
  PoissonTest r;
  r.mean = mean;
  const double N = static_cast<double>(std::accumulate(hist.begin(), hist.end(), std::uint64_t{0}));
  if (N == 0) return r;
  std::vector<double> E, O;
  double e = 0, o = 0, pk = std::exp(-mean), cdf = 0;
  for (size_t k = 0;; ++k) {
    e += N * pk;
    o += k < hist.size() ? static_cast<double>(hist[k]) : 0.0;
    cdf += pk;
    pk *= mean / static_cast<double>(k + 1);
    if (e >= 5.0) {
      E.push_back(e);
      O.push_back(o);
      e = o = 0;
    }
    if (N * (1.0 - cdf) < 5.0) break;
  }
  // The last bin collects the remaining tail.
  double e_last = N - std::accumulate(E.begin(), E.end(), 0.0);
  double o_last = N - std::accumulate(O.begin(), O.end(), 0.0);
  if (e_last >= 5.0 || E.empty()) {
    E.push_back(e_last);
    O.push_back(o_last);
  } else {
    E.back() += e_last;
    O.back() += o_last;
  }
  for (size_t i = 0; i < E.size(); ++i) r.statistic += (O[i] - E[i]) * (O[i] - E[i]) / E[i];
  r.dof = static_cast<int>(E.size()) - 1;
  if (r.dof < 1) return r;
  boost::math::chi_squared dist(r.dof);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  r.passed = r.p_value >= significance;
  return r;
}

bool MonteCarloReport::within(double sigmas) const {
  // Real characters give an imaginary part that is zero up to rounding, with zero sample spread.
  constexpr double floor = 1e-12;
  return std::abs(estimate.real() - expected) <= sigmas * stderr_re + floor &&
         std::abs(estimate.imag()) <= sigmas * stderr_im + floor;
}

MonteCarloReport mc_characteristic(const ExtElement& lambda, double t, double alpha, double delta,
                                   std::uint64_t paths, std::uint64_t seed) {
  if (!(t > 0)) throw DomainError("mc_characteristic: t must be positive");
  if (paths < 2) throw DomainError("mc_characteristic: at least two paths are required");
  const FieldPtr& field = lambda.field();
  const int n = lambda.level();
  const Tower& T = field->tower();
  const LevelData& L = T.level(n);
  const double norm = lambda.is_zero() ? 0.0 : lambda.norm();
  if (norm > 1.0 && delta > (1.0 / norm) * (1.0 + 1e-12))
    throw DomainError("mc_characteristic: delta exceeds 1/||lambda||, the truncated estimate would be biased");
  const int wl = lambda.is_zero() ? 0 : lambda.normalized_valuation();
  const int w_max = delta_valuation_bound(T, n, delta);
  // chi(lambda, x) = 1 on the omitted jumps iff w(lambda) + w(x) >= s0 for every w(x) > w_max.
  if (!lambda.is_zero() && wl + w_max + 1 < L.s0())
    throw DomainError("mc_characteristic: omitted jumps are not annihilated by lambda at this level");

  const int depth = std::max({1, w_max - L.s0() + 1, -wl});
  JumpLaw law = build_jump_law(field, n, delta, alpha, depth);
  const CylinderSpace& S = *law.space;
  const std::uint64_t xi = S.locate_dual(lambda);

  MonteCarloReport rep;
  rep.seed = seed;
  rep.paths = paths;
  rep.level = n;
  rep.resolution = law.resolution();
  rep.t = t;
  rep.alpha = alpha;
  rep.delta = delta;
  rep.lambda_norm = norm;
  rep.rate = law.rate;
  rep.expected = rho(norm, t, alpha);

  std::vector<std::uint64_t> freq(S.size(), 0);
  double sr = 0, si = 0, srr = 0, sii = 0;
  for (std::uint64_t k = 0; k < paths; ++k) {
    Engine g = path_engine(seed, k);
    PathState st = run_path(law, t, g, [](double, std::uint64_t) {});
    if (st.jumps >= rep.jump_counts.size()) rep.jump_counts.resize(st.jumps + 1, 0);
    ++rep.jump_counts[st.jumps];
    ++freq[st.terminal];
    Complex c = S.character(xi, st.terminal);
    sr += c.real();
    si += c.imag();
    srr += c.real() * c.real();
    sii += c.imag() * c.imag();
  }
  const double P = static_cast<double>(paths);
  rep.estimate = {sr / P, si / P};
  auto stderr_of = [&](double s, double ss) {
    double var = (ss - s * s / P) / (P - 1.0);
    return std::sqrt(std::max(var, 0.0) / P);
  };
  rep.stderr_re = stderr_of(sr, srr);
  rep.stderr_im = stderr_of(si, sii);
  rep.poisson = poisson_test(rep.jump_counts, law.rate * t);

  if (S.size() * S.dual().size() <= (std::uint64_t{1} << 24)) {
    auto heat = heat_coset_masses(S, t, alpha);
    double tv = 0;
    for (std::uint64_t z = 0; z < S.size(); ++z) tv += std::abs(static_cast<double>(freq[z]) / P - heat[z]);
    rep.tv_distance = 0.5 * tv;
  } else {
    rep.tv_distance = std::nan("");
  }
  rep.tv_heuristic = 4.0 * std::sqrt(static_cast<double>(S.size()) / P);
  return rep;
}

}  // namespace infext
