#include "pdm/observable.hpp"

namespace pdm {

namespace {

template <class Op>
Observable combine(std::string name, const Observable& a, const Observable& b, Op op) {
  Observable::Fn2 f2;
  if (a.has_second_order() && b.has_second_order())
    f2 = [a, b, op](const PhaseState<Dual2>& x) { return op(a.eval(x), b.eval(x)); };
  return Observable(
      std::move(name), [a, b, op](const PhasePoint& x) { return op(a(x), b(x)); },
      [a, b, op](const PhaseState<Dual1>& x) { return op(a.eval(x), b.eval(x)); }, std::move(f2));
}

}  // namespace

Observable constant_observable(double c) {
  return Observable::from_generic("const", [c](const auto& x) {
    using S = std::decay_t<decltype(x.r)>;
    return S(c);
  });
}

Observable coordinate_observable(int slot) {
  static const char* names[] = {"r", "phi", "p_r", "p_phi"};
  if (slot < 0 || slot > 3) throw Error(ErrorCode::InvalidArgument, "coordinate slot out of range");
  return Observable::from_generic(names[slot], [slot](const auto& x) {
    switch (slot) {
      case 0: return x.r;
      case 1: return x.phi;
      case 2: return x.p_r;
      default: return x.p_phi;
    }
  });
}

Observable operator+(const Observable& a, const Observable& b) {
  return combine("(" + a.name() + "+" + b.name() + ")", a, b,
                 [](const auto& u, const auto& v) { return u + v; });
}
Observable operator-(const Observable& a, const Observable& b) {
  return combine("(" + a.name() + "-" + b.name() + ")", a, b,
                 [](const auto& u, const auto& v) { return u - v; });
}
Observable operator*(const Observable& a, const Observable& b) {
  return combine(a.name() + "*" + b.name(), a, b,
                 [](const auto& u, const auto& v) { return u * v; });
}
Observable operator*(double c, const Observable& a) {
  return constant_observable(c) * a;
}

ComplexObservable operator*(const ComplexObservable& a, const ComplexObservable& b) {
  return {a.name + "*" + b.name, a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexObservable conj(const ComplexObservable& a) {
  return {a.name + "^*", a.re, -1.0 * a.im};
}

}  // namespace pdm
