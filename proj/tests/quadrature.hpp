#pragma once

#include <cmath>
#include <functional>

// Test-only adaptive Simpson oracle. Kept independent of the library's
// closed forms so the two evaluation routes can be cross-checked.

namespace testutil {

inline double simpson(const std::function<double(double)>& f, double a,
                      double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a,
                            double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// adaptive Simpson with ~rel_tol relative accuracy
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double rel_tol = 1e-12) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(f, a, b, fa, fm, fb);
    const double scale = std::abs(whole) > 1e-300 ? std::abs(whole) : 1.0;
    return adaptive_step(f, a, b, fa, fm, fb, whole, rel_tol * scale, 48);
}

}  // namespace testutil
