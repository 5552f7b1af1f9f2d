#include "submax/multilinear.hpp"

#include <cmath>
#include <numeric>

#include "submax/rng.hpp"

namespace submax {

namespace {

constexpr int kExactFractionalCap = 24;

void check_point(const SubmodularOracle& f, std::span<const double> y) {
  if (static_cast<int>(y.size()) != f.n())
    throw BadParamsError("point dimension does not match the ground set");
  for (double v : y)
    if (!(v >= 0.0 && v <= 1.0))
      throw BadParamsError("coordinates must lie in [0, 1]");
}

}  // namespace

double eval_exact(const SubmodularOracle& f, std::span<const double> y) {
  check_point(f, y);
  ElementSet base;
  std::vector<int> frac;
  for (int i = 0; i < f.n(); ++i) {
    if (y[i] >= 1.0) {
      base = base.with(i);
    } else if (y[i] > 0.0) {
      frac.push_back(i);
    }
  }
  const int m = static_cast<int>(frac.size());
  if (m > kExactFractionalCap)
    throw TooManyFractionalError("more than 24 fractional coordinates");
  if (m == 0) return f.evaluate(base);

  // Gray-code walk over subsets of the fractional support: each step
  // toggles one element, so the probability product updates in O(1).
  double prod = 1.0;
  for (int i : frac) prod *= 1.0 - y[i];
  ElementSet cur = base;
  double total = prod * f.evaluate(cur);
  const std::uint64_t count = std::uint64_t{1} << m;
  std::uint64_t gray = 0;
  for (std::uint64_t g = 1; g < count; ++g) {
    std::uint64_t next_gray = g ^ (g >> 1);
    int bit = std::countr_zero(gray ^ next_gray);
    gray = next_gray;
    int i = frac[bit];
    if (cur.contains(i)) {
      cur = cur.without(i);
      prod *= (1.0 - y[i]) / y[i];
    } else {
      cur = cur.with(i);
      prod *= y[i] / (1.0 - y[i]);
    }
    total += prod * f.evaluate(cur);
  }
  return total;
}

McEstimate eval_mc(const SubmodularOracle& f, std::span<const double> y,
                   std::uint64_t samples, std::uint64_t seed) {
  check_point(f, y);
  if (samples < 1) throw BadParamsError("samples must be >= 1");
  double sum = 0, sumsq = 0;
  for (std::uint64_t t = 0; t < samples; ++t) {
    ElementSet draw;
    for (int i = 0; i < f.n(); ++i) {
      if (y[i] <= 0.0) continue;
      if (y[i] >= 1.0 || rng::uniform01(seed, t, i) < y[i])
        draw = draw.with(i);
    }
    double v = f.evaluate(draw);
    sum += v;
    sumsq += v * v;
  }
  McEstimate est;
  est.mean = sum / static_cast<double>(samples);
  if (samples > 1) {
    double var = (sumsq - sum * est.mean) / static_cast<double>(samples - 1);
    est.stderr_of_mean =
        std::sqrt(std::max(0.0, var) / static_cast<double>(samples));
  }
  return est;
}

double partial_derivative(const SubmodularOracle& f, std::span<const double> y,
                          int i) {
  check_point(f, y);
  if (i < 0 || i >= f.n()) throw BadParamsError("coordinate out of range");
  std::vector<double> hi(y.begin(), y.end()), lo(y.begin(), y.end());
  hi[i] = 1.0;
  lo[i] = 0.0;
  return eval_exact(f, hi) - eval_exact(f, lo);
}

namespace {

class ScaledCopyOracle final : public SubmodularOracle {
 public:
  ScaledCopyOracle(OraclePtr parent, std::vector<int> multiplicities, int total)
      : SubmodularOracle(GroundSet(total)),
        parent_(std::move(parent)),
        mult_(std::move(multiplicities)) {
    offsets_.resize(mult_.size());
    int at = 0;
    for (size_t i = 0; i < mult_.size(); ++i) {
      offsets_[i] = at;
      at += mult_[i];
    }
  }

  std::string kind() const override { return "scaled_copies"; }

 protected:
  double raw_value(ElementSet t) const override {
    std::vector<double> y(mult_.size());
    for (size_t i = 0; i < mult_.size(); ++i) {
      SetMask copies =
          ((mult_[i] >= 64 ? ~SetMask{0} : (SetMask{1} << mult_[i]) - 1))
          << offsets_[i];
      y[i] = static_cast<double>(std::popcount(t.bits & copies)) /
             static_cast<double>(mult_[i]);
    }
    return eval_exact(*parent_, y);
  }

 private:
  OraclePtr parent_;
  std::vector<int> mult_;
  std::vector<int> offsets_;
};

}  // namespace

OraclePtr lift_scaled(OraclePtr f, const std::vector<int>& multiplicities) {
  if (static_cast<int>(multiplicities.size()) != f->n())
    throw BadParamsError("one multiplicity per ground element required");
  long long total = 0;
  for (int s : multiplicities) {
    if (s < 1) throw BadParamsError("multiplicities must be >= 1");
    total += s;
  }
  if (total > 20)
    throw TooLargeError("scaled lifts are capped at 20 total copies");
  return std::make_shared<ScaledCopyOracle>(std::move(f), multiplicities,
                                            static_cast<int>(total));
}

double FEvaluator::operator()(std::span<const double> y) const {
  int fractional = 0;
  for (double v : y)
    if (v > 0.0 && v < 1.0) ++fractional;
  if (fractional <= exact_max_fractional_) return eval_exact(*f_, y);
  used_mc_ = true;
  return eval_mc(*f_, y, mc_samples_, seed_).mean;
}

}  // namespace submax
