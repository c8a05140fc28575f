#pragma once

// A scalar function on phase space, written once over a generic scalar and
// instantiated for double, Dual1 (gradients) and Dual2 (gradients of
// brackets). Model parameters are bound at construction.

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "pdm/dual.hpp"
#include "pdm/phase.hpp"

namespace pdm {

class Observable {
 public:
  using Fn0 = std::function<double(const PhaseState<double>&)>;
  using Fn1 = std::function<Dual1(const PhaseState<Dual1>&)>;
  using Fn2 = std::function<Dual2(const PhaseState<Dual2>&)>;

  Observable() = default;
  Observable(std::string name, Fn0 f0, Fn1 f1, Fn2 f2)
      : name_(std::move(name)), f0_(std::move(f0)), f1_(std::move(f1)), f2_(std::move(f2)) {}

  // `f` must be callable as f(const PhaseState<S>&) -> S for each scalar S.
  template <class F>
  static Observable from_generic(std::string name, F f) {
    return Observable(
        std::move(name), [f](const PhaseState<double>& x) { return static_cast<double>(f(x)); },
        [f](const PhaseState<Dual1>& x) { return Dual1(f(x)); },
        [f](const PhaseState<Dual2>& x) { return Dual2(f(x)); });
  }

  const std::string& name() const noexcept { return name_; }
  Observable renamed(std::string name) const {
    Observable o = *this;
    o.name_ = std::move(name);
    return o;
  }

  double operator()(const PhasePoint& x) const { return f0_(x); }
  Dual1 eval(const PhaseState<Dual1>& x) const { return f1_(x); }
  Dual2 eval(const PhaseState<Dual2>& x) const {
    if (!f2_) throw Error(ErrorCode::UnsupportedDepth, "no second-order evaluation for " + name_);
    return f2_(x);
  }
  bool has_second_order() const noexcept { return static_cast<bool>(f2_); }

  const Fn0& fn0() const noexcept { return f0_; }
  const Fn1& fn1() const noexcept { return f1_; }
  const Fn2& fn2() const noexcept { return f2_; }

 private:
  std::string name_;
  Fn0 f0_;
  Fn1 f1_;
  Fn2 f2_;
};

Observable constant_observable(double c);
Observable coordinate_observable(int slot);  // 0:r 1:phi 2:p_r 3:p_phi

Observable operator+(const Observable& a, const Observable& b);
Observable operator-(const Observable& a, const Observable& b);
Observable operator*(const Observable& a, const Observable& b);
Observable operator*(double c, const Observable& a);

// Real and imaginary parts of a complex phase-space function.
struct ComplexObservable {
  std::string name;
  Observable re;
  Observable im;
};

ComplexObservable operator*(const ComplexObservable& a, const ComplexObservable& b);
ComplexObservable conj(const ComplexObservable& a);

}  // namespace pdm
