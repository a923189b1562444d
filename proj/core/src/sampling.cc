// Copyright 2026 The roc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "roc/verifier.h"

namespace roc {

namespace {

constexpr int kMaxRejectionDraws = 100000;
constexpr int kSignPatternMaxDim = 10;
constexpr int kPolySignPatternMaxDim = 6;

using Rng = std::mt19937_64;

struct Box {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  double LogVolume() const {
    double v = 0.0;
    for (Eigen::Index i = 0; i < lower.size(); ++i) {
      v += std::log(std::max(upper(i) - lower(i), 1e-300));
    }
    return v;
  }
};

Box BoundingBox(const UncertaintySet& set) {
  const int dim = set.dim();
  if (const auto* ball = set.As<NormBall>()) {
    return {Eigen::VectorXd::Constant(dim, -ball->radius),
            Eigen::VectorXd::Constant(dim, ball->radius)};
  }
  if (const auto* poly = set.As<Polyhedral>()) {
    const PolyhedronRanges r = CoordinateRanges(*poly);
    if (!r.bounded) throw ModelError("polyhedral uncertainty set is unbounded");
    return {r.lower, r.upper};
  }
  if (const auto* inter = set.As<Intersection>()) {
    Box box = BoundingBox(inter->members.front());
    for (std::size_t i = 1; i < inter->members.size(); ++i) {
      const Box m = BoundingBox(inter->members[i]);
      box.lower = box.lower.cwiseMax(m.lower);
      box.upper = box.upper.cwiseMin(m.upper);
    }
    return box;
  }
  Box box{Eigen::VectorXd::Zero(dim), Eigen::VectorXd::Zero(dim)};
  for (const auto& m : set.As<MinkowskiSum>()->members) {
    const Box b = BoundingBox(m);
    box.lower += b.lower;
    box.upper += b.upper;
  }
  return box;
}

// Membership that also handles Minkowski sums by refusing to answer.
std::optional<bool> SafeContains(const UncertaintySet& set, const Eigen::VectorXd& z) {
  try {
    return set.Contains(z, 1e-9);
  } catch (const Error&) {
    return std::nullopt;
  }
}

bool MembershipCheckable(const UncertaintySet& set) {
  if (set.As<MinkowskiSum>() != nullptr) return false;
  if (const auto* inter = set.As<Intersection>()) {
    for (const auto& m : inter->members) {
      if (!MembershipCheckable(m)) return false;
    }
  }
  return true;
}

class Sampler {
 public:
  explicit Sampler(const UncertaintySet& set) : set_(set) {
    if (const auto* inter = set.As<Intersection>()) {
      double best = kInfinity;
      int unchecked = 0;
      for (std::size_t i = 0; i < inter->members.size(); ++i) {
        if (!MembershipCheckable(inter->members[i])) {
          ++unchecked;
          proposal_ = i;
          continue;
        }
        const double v = BoundingBox(inter->members[i]).LogVolume();
        if (unchecked == 0 && v < best) {
          best = v;
          proposal_ = i;
        }
      }
      hopeless_ = unchecked > 1;
    }
    const std::vector<UncertaintySet>* members = nullptr;
    if (const auto* inter = set.As<Intersection>()) members = &inter->members;
    if (const auto* sum = set.As<MinkowskiSum>()) members = &sum->members;
    if (members != nullptr) {
      for (const auto& m : *members) children_.push_back(std::make_unique<Sampler>(m));
    }
    if (set.As<Polyhedral>() != nullptr) {
      point_ = Eigen::VectorXd::Zero(set.dim());
    }
  }

  // One draw, or nullopt when rejection sampling gave up.
  std::optional<Eigen::VectorXd> Draw(Rng& rng) {
    const int dim = set_.dim();
    if (set_.IsZero()) return Eigen::VectorXd::Zero(dim);
    if (const auto* ball = set_.As<NormBall>()) return DrawBall(*ball, rng);
    if (const auto* poly = set_.As<Polyhedral>()) {
      if (!burned_in_) {
        for (int i = 0; i < 10 * dim; ++i) HitAndRunStep(*poly, rng);
        burned_in_ = true;
      }
      HitAndRunStep(*poly, rng);
      return point_;
    }
    if (set_.As<MinkowskiSum>() != nullptr) {
      Eigen::VectorXd z = Eigen::VectorXd::Zero(dim);
      for (auto& child : children_) {
        std::optional<Eigen::VectorXd> part = child->Draw(rng);
        if (!part) return std::nullopt;
        z += *part;
      }
      return z;
    }
    const auto& members = set_.As<Intersection>()->members;
    if (hopeless_) return std::nullopt;
    for (int attempt = 0; attempt < kMaxRejectionDraws; ++attempt) {
      std::optional<Eigen::VectorXd> z = children_[proposal_]->Draw(rng);
      if (!z) continue;
      bool inside = true;
      for (std::size_t i = 0; i < members.size() && inside; ++i) {
        if (i == proposal_) continue;
        inside = SafeContains(members[i], *z).value_or(false);
      }
      if (inside) return z;
    }
    hopeless_ = true;
    return std::nullopt;
  }

 private:
  Eigen::VectorXd DrawBall(const NormBall& ball, Rng& rng) {
    const int dim = ball.dim;
    const double r = ball.radius;
    Eigen::VectorXd z(dim);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (ball.p.is_inf()) {
      std::uniform_real_distribution<double> coord(-r, r);
      for (int i = 0; i < dim; ++i) z(i) = coord(rng);
      return z;
    }
    if (ball.p.is_two()) {
      std::normal_distribution<double> normal;
      double n = 0.0;
      while (n == 0.0) {
        for (int i = 0; i < dim; ++i) z(i) = normal(rng);
        n = z.norm();
      }
      return (r * std::pow(unit(rng), 1.0 / dim) / n) * z;
    }
    if (ball.p.is_one()) {
      // Dirichlet(1, ..., 1) over dim + 1 parts; dropping the last one gives
      // a uniform point of the simplex {w >= 0, sum w <= 1}.
      std::exponential_distribution<double> expo(1.0);
      Eigen::VectorXd e(dim + 1);
      for (int i = 0; i <= dim; ++i) e(i) = expo(rng);
      const double total = e.sum();
      std::bernoulli_distribution coin(0.5);
      for (int i = 0; i < dim; ++i) z(i) = r * (coin(rng) ? 1.0 : -1.0) * e(i) / total;
      return z;
    }
    // Generalized Gaussian construction for a uniform point of the p-ball.
    const double p = ball.p.value();
    std::gamma_distribution<double> gamma(1.0 / p, 1.0);
    std::exponential_distribution<double> expo(1.0);
    std::bernoulli_distribution coin(0.5);
    double sum = 0.0;
    for (int i = 0; i < dim; ++i) {
      const double g = std::pow(gamma(rng), 1.0 / p);
      z(i) = coin(rng) ? g : -g;
      sum += std::pow(g, p);
    }
    return (r / std::pow(sum + expo(rng), 1.0 / p)) * z;
  }

  void HitAndRunStep(const Polyhedral& poly, Rng& rng) {
    const Eigen::Index dim = poly.D.cols();
    std::normal_distribution<double> normal;
    Eigen::VectorXd dir(dim);
    double n = 0.0;
    while (n == 0.0) {
      for (Eigen::Index i = 0; i < dim; ++i) dir(i) = normal(rng);
      n = dir.norm();
    }
    dir /= n;
    const Eigen::VectorXd slack = poly.d - poly.D * point_;
    const Eigen::VectorXd rate = poly.D * dir;
    double lo = -kInfinity;
    double hi = kInfinity;
    for (Eigen::Index i = 0; i < rate.size(); ++i) {
      const double s = std::max(slack(i), 0.0);
      if (rate(i) > 1e-14) {
        hi = std::min(hi, s / rate(i));
      } else if (rate(i) < -1e-14) {
        lo = std::max(lo, s / rate(i));
      }
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw ModelError("polyhedral uncertainty set is unbounded");
    }
    std::uniform_real_distribution<double> step(lo, hi);
    point_ += (hi > lo ? step(rng) : lo) * dir;
  }

  const UncertaintySet& set_;
  std::vector<std::unique_ptr<Sampler>> children_;
  std::size_t proposal_ = 0;
  bool hopeless_ = false;
  Eigen::VectorXd point_;
  bool burned_in_ = false;
};

// Largest t with t * e_i guaranteed to lie in the set.
double AxisReach(const UncertaintySet& set, int i, double sign) {
  if (set.IsZero()) return 0.0;
  if (const auto* ball = set.As<NormBall>()) return ball->radius;
  if (const auto* poly = set.As<Polyhedral>()) {
    double t = kInfinity;
    for (Eigen::Index j = 0; j < poly->D.rows(); ++j) {
      const double a = sign * poly->D(j, i);
      if (a > 0) t = std::min(t, std::max(poly->d(j), 0.0) / a);
    }
    return t;
  }
  if (const auto* inter = set.As<Intersection>()) {
    double t = kInfinity;
    for (const auto& m : inter->members) t = std::min(t, AxisReach(m, i, sign));
    return t;
  }
  double t = 0.0;
  for (const auto& m : set.As<MinkowskiSum>()->members) t += AxisReach(m, i, sign);
  return t;
}

std::vector<Eigen::VectorXd> StressPoints(const UncertaintySet& set) {
  const int dim = set.dim();
  std::vector<Eigen::VectorXd> points;
  if (set.IsZero()) {
    points.push_back(Eigen::VectorXd::Zero(dim));
    return points;
  }
  if (const auto* inter = set.As<Intersection>()) {
    for (int i = 0; i < dim; ++i) {
      for (double sign : {1.0, -1.0}) {
        Eigen::VectorXd z = Eigen::VectorXd::Zero(dim);
        z(i) = sign * AxisReach(set, i, sign);
        points.push_back(z);
      }
    }
    for (const auto& member : inter->members) {
      for (const Eigen::VectorXd& z : StressPoints(member)) {
        bool inside = true;
        for (const auto& other : inter->members) {
          inside = inside && SafeContains(other, z).value_or(false);
        }
        if (inside) points.push_back(z);
      }
    }
    return points;
  }
  if (const auto* sum = set.As<MinkowskiSum>(); sum != nullptr && !SupportsPessimize(set)) {
    std::vector<std::vector<Eigen::VectorXd>> parts;
    for (const auto& member : sum->members) parts.push_back(StressPoints(member));
    for (std::size_t k = 0; k < 2 * static_cast<std::size_t>(dim); ++k) {
      Eigen::VectorXd z = Eigen::VectorXd::Zero(dim);
      for (const auto& part : parts) z += part[std::min(k, part.size() - 1)];
      points.push_back(z);
    }
    return points;
  }
  for (int i = 0; i < dim; ++i) {
    for (double sign : {1.0, -1.0}) {
      Eigen::VectorXd dir = Eigen::VectorXd::Zero(dim);
      dir(i) = sign;
      points.push_back(Pessimize(set, dir).zstar);
    }
  }
  const bool poly = set.As<Polyhedral>() != nullptr;
  if (dim <= (poly ? kPolySignPatternMaxDim : kSignPatternMaxDim)) {
    for (long mask = 0; mask < (1L << dim); ++mask) {
      Eigen::VectorXd dir(dim);
      for (int i = 0; i < dim; ++i) dir(i) = (mask >> i) & 1 ? -1.0 : 1.0;
      points.push_back(Pessimize(set, dir).zstar);
    }
  }
  return points;
}

std::vector<Eigen::VectorXd> Unique(std::vector<Eigen::VectorXd> points) {
  std::vector<Eigen::VectorXd> out;
  std::set<std::vector<double>> seen;
  for (auto& p : points) {
    std::vector<double> key(p.data(), p.data() + p.size());
    for (double& v : key) v = std::round(v * 1e12) / 1e12 + 0.0;
    if (seen.insert(key).second) out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

SampleSet SampleUncertaintySet(const UncertaintySet& set, int n,
                               std::uint64_t seed) {
  SampleSet out;
  Rng rng(seed);
  Sampler sampler(set);
  for (int i = 0; i < n; ++i) {
    std::optional<Eigen::VectorXd> z = sampler.Draw(rng);
    if (z) {
      out.random.push_back(std::move(*z));
    } else {
      ++out.rejection_failures;
    }
  }
  out.stress = Unique(StressPoints(set));
  return out;
}

}  // namespace roc
