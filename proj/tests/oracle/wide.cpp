#include "oracle/wide.hpp"

namespace oracle {

wf pi() {
    static const wf value = 4 * atan(wf(1));
    return value;
}

wf dist(const wf& x1, const wf& y1, const wf& x2, const wf& y2) {
    wf dx = x1 - x2, dy = y1 - y2;
    return acosh(1 + (dx * dx + dy * dy) / (2 * y1 * y2));
}

wf translation_length(const wf& tr) {
    return 2 * acosh(abs(tr) / 2);
}

wf figure_eight_length(const wf& l1, const wf& l2, const wf& l3) {
    return 2 * acosh(2 * cosh(l1 / 2) * cosh(l3 / 2) + cosh(l2 / 2));
}

wf standard_collar_width(const wf& l) {
    return asinh(1 / sinh(l / 2));
}

wf fermi_cylinder_volume(const wf& l, const wf& w) {
    return l * sinh(w);
}

wf fermi_boundary_length(const wf& l, const wf& w) {
    return l * cosh(w);
}

wf bavard_bound(std::uint64_t genus) {
    wf arg = pi() / (12 * wf(genus) - 6);
    return 2 * acosh(1 / (2 * sin(arg)));
}

wf nonsimple_length_floor() {
    return 4 * asinh(wf(1));
}

wf torus_figure_eight_bound(const wf& l) {
    return l * sqrt(1 + 4 * pi() * pi() / (l * l));
}

wf hexagon_seam(const wf& a, const wf& b, const wf& c) {
    return acosh((cosh(a) + cosh(b) * cosh(c)) / (sinh(b) * sinh(c)));
}

Mat mul(const Mat& m, const Mat& n) {
    return Mat{m[0] * n[0] + m[1] * n[2], m[0] * n[1] + m[1] * n[3],
               m[2] * n[0] + m[3] * n[2], m[2] * n[1] + m[3] * n[3]};
}

wf trace(const Mat& m) { return m[0] + m[3]; }

namespace {
wf simpson(const std::function<wf(const wf&)>& f, const wf& lo, const wf& hi,
           const wf& flo, const wf& fmid, const wf& fhi) {
    return (hi - lo) / 6 * (flo + 4 * fmid + fhi);
}

wf adapt(const std::function<wf(const wf&)>& f, const wf& lo, const wf& hi,
         const wf& flo, const wf& fmid, const wf& fhi, const wf& whole,
         const wf& tol, int depth) {
    wf mid = (lo + hi) / 2;
    wf lmid = (lo + mid) / 2, rmid = (mid + hi) / 2;
    wf flm = f(lmid), frm = f(rmid);
    wf left = simpson(f, lo, mid, flo, flm, fmid);
    wf right = simpson(f, mid, hi, fmid, frm, fhi);
    wf err = left + right - whole;
    if (depth <= 0 || abs(err) <= 15 * tol)
        return left + right + err / 15;
    return adapt(f, lo, mid, flo, flm, fmid, left, tol / 2, depth - 1) +
           adapt(f, mid, hi, fmid, frm, fhi, right, tol / 2, depth - 1);
}
} // namespace

wf integrate(const std::function<wf(const wf&)>& f, const wf& lo, const wf& hi,
             const wf& tol) {
    wf mid = (lo + hi) / 2;
    wf flo = f(lo), fmid = f(mid), fhi = f(hi);
    wf whole = simpson(f, lo, hi, flo, fmid, fhi);
    return adapt(f, lo, hi, flo, fmid, fhi, whole, tol, 60);
}

wf power_exp_integral(int m, const wf& alpha, const wf& T) {
    // I_m = T^m e^(aT)/a - (m/a) I_{m-1}, I_0 = (e^(aT) - 1)/a.
    wf eaT = exp(alpha * T);
    wf I = (eaT - 1) / alpha;
    wf Tk = 1;
    for (int k = 1; k <= m; ++k) {
        Tk *= T;
        I = Tk * eaT / alpha - wf(k) / alpha * I;
    }
    return I;
}

double to_double(const wf& v) { return v.convert_to<double>(); }

} // namespace oracle
