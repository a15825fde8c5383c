#include "cmvspec/walk.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cmvspec {

double Coin::unitarity_defect() const {
  const Mat2C m = matrix();
  return max_abs_diff(m.adjoint() * m, Mat2C::identity());
}

CoinSequence::CoinSequence(std::vector<Coin> coins) : coins_(std::move(coins)) {
  if (coins_.empty()) throw Error(ErrorCode::Config, "empty coin sequence");
  for (const auto& c : coins_) {
    if (c.q11 == 0.0 || c.q22 == 0.0) throw Error(ErrorCode::DegenerateCoin, "q11 or q22 vanishes");
    if (c.unitarity_defect() > 1e-10) throw Error(ErrorCode::Config, "coin is not unitary");
  }
}

Coin hadamard_coin() {
  const double s = 1.0 / std::sqrt(2.0);
  return {s, s, s, -s};
}

cplx WalkState::at(index_t n, int spin) const {
  if (n < lo || n > hi()) return 0.0;
  const auto i = static_cast<std::size_t>(n - lo);
  return spin > 0 ? plus[i] : minus[i];
}

double WalkState::norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < plus.size(); ++i) s += std::norm(plus[i]) + std::norm(minus[i]);
  return std::sqrt(s);
}

WalkState WalkState::localized(index_t n, cplx plus_amp, cplx minus_amp) {
  WalkState s;
  s.lo = n - 1;
  s.plus = {0.0, plus_amp, 0.0};
  s.minus = {0.0, minus_amp, 0.0};
  return s;
}

WalkState step(const WalkState& state, const CoinSequence& coins) {
  WalkState out;
  out.lo = state.lo - 1;
  out.time = state.time + 1;
  const std::size_t size = state.plus.size() + 2;
  out.plus.assign(size, 0.0);
  out.minus.assign(size, 0.0);
  for (std::size_t i = 0; i < state.plus.size(); ++i) {
    const Coin& c = coins.at(state.lo + static_cast<index_t>(i));
    const cplx p = state.plus[i];
    const cplx m = state.minus[i];
    // site lo + i maps to out index i + 1; shifts move it to i + 2 and i
    out.plus[i + 2] += c.q11 * p + c.q12 * m;
    out.minus[i] += c.q21 * p + c.q22 * m;
  }
  return out;
}

WalkState step_adjoint(const WalkState& state, const CoinSequence& coins) {
  WalkState out;
  out.lo = state.lo - 1;
  out.time = state.time - 1;
  const std::size_t size = state.plus.size() + 2;
  out.plus.assign(size, 0.0);
  out.minus.assign(size, 0.0);
  // S*: plus moves left, minus moves right.
  for (std::size_t i = 0; i < state.plus.size(); ++i) {
    out.plus[i] += state.plus[i];
    out.minus[i + 2] += state.minus[i];
  }
  for (std::size_t i = 0; i < size; ++i) {
    const Coin& c = coins.at(out.lo + static_cast<index_t>(i));
    const cplx p = out.plus[i];
    const cplx m = out.minus[i];
    out.plus[i] = std::conj(c.q11) * p + std::conj(c.q21) * m;
    out.minus[i] = std::conj(c.q12) * p + std::conj(c.q22) * m;
  }
  return out;
}

cplx WalkMatrixWindow::entry(index_t k, index_t l) const {
  if (k < lo || k > hi || l < lo || l > hi) return 0.0;
  return entries[static_cast<std::size_t>((k - lo) * size() + (l - lo))];
}

WalkMatrixWindow update_matrix_window(const CoinSequence& coins, index_t lo, index_t hi) {
  if (hi - lo < 4) throw Error(ErrorCode::WindowTooSmall, "window needs hi - lo >= 4");
  WalkMatrixWindow w;
  w.lo = lo;
  w.hi = hi;
  w.entries.assign(static_cast<std::size_t>(w.size() * w.size()), 0.0);
  auto set = [&](index_t k, index_t l, cplx v) {
    if (k >= lo && k <= hi) w.entries[static_cast<std::size_t>((k - lo) * w.size() + (l - lo))] = v;
  };
  for (index_t l = lo; l <= hi; ++l) {
    const index_t m = fdiv(l, 2);
    const Coin& c = coins.at(m);
    if (pmod(l, 2) == 0) {
      set(2 * m + 2, l, c.q11);
      set(2 * m - 1, l, c.q21);
    } else {
      set(2 * m + 2, l, c.q12);
      set(2 * m - 1, l, c.q22);
    }
  }
  return w;
}

cplx WalkCmv::gamma(index_t n) const {
  const double q = static_cast<double>(word.q());
  return std::polar(1.0, psi * 2.0 * static_cast<double>(fdiv(n, 2)) / q);
}

WalkCmv coins_to_cmv(const CoinSequence& coins, double r) {
  const index_t p = coins.period();
  const index_t q = 2 * p;
  auto unit = [](cplx v) { return v / std::abs(v); };
  cplx prod = 1.0;
  for (index_t c = 1; c <= p; ++c) prod *= unit(coins.at(c).q22) / unit(coins.at(c).q11);
  WalkCmv out{free_word(q), 0.5 * std::arg(prod)};

  // Coin c pairs with odd k = 2c - 1 through
  //   gamma_{k-1} q22 conj(gamma_{k+1}) = lambda_{k-1} lambda_k rho_k
  //   gamma_{k+2} q11 conj(gamma_k)     = lambda_{k+1} lambda_k rho_k
  //   gamma_{k-1} q21 conj(gamma_k)     = lambda_{k-1} lambda_k conj(alpha_k)
  std::vector<cplx> prods(static_cast<std::size_t>(q));
  for (index_t n = 0; n < q; ++n) {
    if (pmod(n, 2) == 0) {
      const index_t k = n + 1;
      const Coin& c = coins.at((k + 1) / 2);
      prods[static_cast<std::size_t>(n)] = out.gamma(k - 1) * std::conj(out.gamma(k + 1)) * unit(c.q22);
    } else {
      const index_t k = n;
      const Coin& c = coins.at((k + 1) / 2);
      prods[static_cast<std::size_t>(n)] = out.gamma(k + 2) * std::conj(out.gamma(k)) * unit(c.q11);
    }
  }
  std::vector<cplx> lambda(static_cast<std::size_t>(q + 1));
  lambda[0] = 1.0;
  for (index_t n = 0; n < q; ++n) {
    lambda[static_cast<std::size_t>(n + 1)] = prods[static_cast<std::size_t>(n)] / lambda[static_cast<std::size_t>(n)];
  }
  if (std::abs(lambda[static_cast<std::size_t>(q)] - 1.0) > 1e-9) {
    throw Error(ErrorCode::Config, "coin phases do not close over one period");
  }
  std::vector<VerblunskyPair> pairs;
  for (index_t n = 0; n < q; ++n) {
    const double arg = std::arg(lambda[static_cast<std::size_t>(n)]);
    if (pmod(n, 2) == 0) {
      pairs.push_back({DiskPoint(0.0), arg});
    } else {
      const Coin& c = coins.at((n + 1) / 2);
      const cplx conj_alpha =
          out.gamma(n - 1) * c.q21 * std::conj(out.gamma(n)) / prods[static_cast<std::size_t>(n - 1)];
      pairs.push_back({DiskPoint(std::conj(conj_alpha)), arg});
    }
  }
  out.word = VerblunskyWord(std::move(pairs), r);
  return out;
}

CoinSequence cmv_from_coins_inverse(const VerblunskyWord& word) {
  for (index_t n = 0; n < word.q(); n += 2) {
    if (word.alpha(n) != 0.0) {
      throw Error(ErrorCode::NotWalkShaped, "alpha_" + std::to_string(n) + " is nonzero");
    }
  }
  const index_t p = word.q() / 2;
  std::vector<Coin> coins(static_cast<std::size_t>(p));
  for (index_t c = 1; c <= p; ++c) {
    const index_t k = 2 * c - 1;
    const cplx lo = word.lambda(k - 1) * word.lambda(k);
    const cplx hi = word.lambda(k + 1) * word.lambda(k);
    const double rho = word.rho(k);
    const cplx a = word.alpha(k);
    coins[static_cast<std::size_t>(pmod(c, p))] = {hi * rho, -hi * a, lo * std::conj(a), lo * rho};
  }
  return CoinSequence(std::move(coins));
}

RageReport rage_diagnostics(const CoinSequence& coins, const WalkState& psi0, index_t j_radius,
                            index_t horizon, std::vector<index_t> checkpoints) {
  if (horizon < 1) throw Error(ErrorCode::Config, "horizon must be at least 1");
  RageReport rep;
  rep.j_radius = j_radius;
  rep.horizon = horizon;
  rep.survival.assign(static_cast<std::size_t>(2 * horizon + 1), 0.0);
  std::vector<double> overlap(rep.survival.size(), 0.0);

  auto record = [&](const WalkState& s, index_t n) {
    double p = 0.0;
    for (index_t j = -j_radius; j <= j_radius; ++j) p += std::norm(s.at(j, 1)) + std::norm(s.at(j, -1));
    cplx o = 0.0;
    for (index_t j = psi0.lo; j <= psi0.hi(); ++j) {
      o += std::conj(psi0.at(j, 1)) * s.at(j, 1) + std::conj(psi0.at(j, -1)) * s.at(j, -1);
    }
    const auto i = static_cast<std::size_t>(n + horizon);
    rep.survival[i] = std::min(1.0, p);
    overlap[i] = std::min(1.0, std::norm(o));
  };
  record(psi0, 0);
  WalkState fwd = psi0;
  WalkState bwd = psi0;
  for (index_t n = 1; n <= horizon; ++n) {
    fwd = step(fwd, coins);
    bwd = step_adjoint(bwd, coins);
    record(fwd, n);
    record(bwd, -n);
  }

  if (checkpoints.empty()) {
    for (index_t c = 1; c <= horizon; c *= 2) checkpoints.push_back(c);
    if (checkpoints.back() != horizon) checkpoints.push_back(horizon);
  }
  std::sort(checkpoints.begin(), checkpoints.end());
  for (index_t c : checkpoints) {
    if (c < 0 || c > horizon) throw Error(ErrorCode::Config, "checkpoint outside the horizon");
    double sp = 0.0;
    double so = 0.0;
    for (index_t n = -c; n <= c; ++n) {
      sp += rep.survival[static_cast<std::size_t>(n + horizon)];
      so += overlap[static_cast<std::size_t>(n + horizon)];
    }
    const double w = 1.0 / static_cast<double>(2 * c + 1);
    rep.checkpoints.push_back(c);
    rep.cesaro.push_back(sp * w);
    rep.wiener.push_back(so * w);
  }
  // Least-squares slope of log cesaro in log N over positive checkpoints.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (std::size_t i = 0; i < rep.checkpoints.size(); ++i) {
    if (rep.checkpoints[i] < 1 || rep.cesaro[i] <= 0.0) continue;
    const double x = std::log(static_cast<double>(rep.checkpoints[i]));
    const double y = std::log(rep.cesaro[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt >= 2) rep.cesaro_log_slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return rep;
}

namespace {

using nlohmann::json;

cplx read_cplx(const json& v) {
  if (!v.is_array() || v.size() != 2) throw Error(ErrorCode::Config, "complex entries are [re, im]");
  return {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

CoinSequence coins_from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    std::vector<Coin> coins;
    for (const auto& c : j.at("coins")) {
      if (!c.is_array() || c.size() != 4) throw Error(ErrorCode::Config, "each coin has four entries");
      coins.push_back({read_cplx(c[0]), read_cplx(c[1]), read_cplx(c[2]), read_cplx(c[3])});
    }
    if (j.contains("period") && j.at("period").get<std::size_t>() != coins.size()) {
      throw Error(ErrorCode::Config, "period does not match the number of coins");
    }
    return CoinSequence(std::move(coins));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Config, std::string("coin file: ") + e.what());
  }
}

std::string coins_to_json(const CoinSequence& coins) {
  json j;
  j["period"] = coins.period();
  json arr = json::array();
  for (const auto& c : coins.coins()) {
    json row = json::array();
    for (cplx v : {c.q11, c.q12, c.q21, c.q22}) row.push_back({v.real(), v.imag()});
    arr.push_back(row);
  }
  j["coins"] = arr;
  return j.dump(2);
}

CoinSequence read_coin_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, "cannot open coin file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return coins_from_json(ss.str());
}

}  // namespace cmvspec
