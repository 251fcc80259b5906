"""High-precision reference values frozen into the Rust tests.

Run with `python3 reference_values.py`; requires mpmath. Every value here is
computed independently of the Rust implementation (direct definitions,
mpmath special functions and mpmath quadrature).
"""
from mpmath import mp, mpf, mpc, loggamma, gamma, rgamma, sin, pi, quad, exp, log, findroot, inf, sqrt, atan

mp.dps = 40


def c(alpha, u):
    return sin(alpha * u) / sin(u)


def a(alpha, u):
    b = c(alpha, u) ** alpha * c(1 - alpha, u) ** (1 - alpha)
    return b ** (1 / (1 - alpha))


def a_inv(alpha, x):
    return findroot(lambda t: log(a(alpha, t)) - log(x), (mpf("1e-6"), pi - mpf("1e-6")), solver="anderson")


def kanter_pdf_series(alpha, y, terms=4000):
    s = mpf(0)
    for k in range(terms):
        s += rgamma(1 - alpha - k * alpha) * rgamma(alpha - k * (1 - alpha)) * (-1) ** k / gamma(k + 1) * y ** (-((k + 1) * (1 - alpha) + 1))
    return (1 - alpha) * s


def kanter_pdf_inverse(alpha, y):
    # density of a(U) from the CDF a^{-1}(y)/pi, by differentiating numerically
    return mp.diff(lambda t: a_inv(alpha, t), y) / pi


def exp_v_density(alpha, r, y):
    theta = lambda s: gamma(r * s / alpha + 1) / (gamma(s + 1) * gamma(s * r + 1))
    f = lambda t: (theta(mpc(0, t)) * mpf(y) ** mpc(0, t)).real
    return quad(f, [0, 10, 20, 40, 80]) / (pi * y)


def stable_pdf_integral(alpha, x):
    # Zolotarev/Kanter integral, independent of the power series
    p = alpha / (1 - alpha)
    z = mpf(x) ** (-p)
    g = lambda u: a(alpha, u) * z * exp(-a(alpha, u) * z)
    return p / (pi * x) * quad(g, [0, pi])


def free_pdf(alpha, x):
    th = a_inv(1 - alpha, x)
    return sin(th) * sin(alpha * th) / sin((1 - alpha) * th) / (pi * x)


if __name__ == "__main__":
    print("loggamma(3+4i) =", loggamma(mpc(3, 4)))
    print("loggamma(0.1+100i) =", loggamma(mpc("0.1", 100)))
    print("loggamma(-2.5+0.5i) =", loggamma(mpc("-2.5", "0.5")))
    print("rgamma(-2.5) =", rgamma(mpf("-2.5")))
    print("rgamma(-7.3) =", rgamma(mpf("-7.3")))
    print("gamma(2.2) =", gamma(mpf("2.2")))
    print("c(0.3,1) =", c(mpf("0.3"), mpf(1)))
    print("a(0.3,1) =", a(mpf("0.3"), mpf(1)))
    print("a(0.7,2) =", a(mpf("0.7"), mpf(2)))
    print("a_inv(0.3,2) =", a_inv(mpf("0.3"), mpf(2)))
    print("a_inv(0.7,2) =", a_inv(mpf("0.7"), mpf(2)))
    for al in ["0.3", "0.1", "0.03"]:
        al = mpf(al)
        print("kanter_pdf(%s,2) series =" % al, kanter_pdf_series(al, mpf(2), 400), " via inverse:", kanter_pdf_inverse(al, mpf(2)))
    print("kanter_pdf(0.4,1.3) =", kanter_pdf_series(mpf("0.4"), mpf("1.3"), 600), kanter_pdf_inverse(mpf("0.4"), mpf("1.3")))
    print("stable_pdf(0.5,1) =", 1 / (2 * sqrt(pi)) * exp(mpf(-1) / 4))
    print("stable_pdf(0.7,1) =", stable_pdf_integral(mpf("0.7"), 1))
    print("stable_pdf(0.7,0.1) =", stable_pdf_integral(mpf("0.7"), mpf("0.1")))
    print("stable_pdf(0.3,2) =", stable_pdf_integral(mpf("0.3"), 2))
    print("exp_v_pdf(0.5,1.5,1) =", exp_v_density(mpf("0.5"), mpf("1.5"), 1))
    print("exp_v_pdf(0.5,1.5,0.5) =", exp_v_density(mpf("0.5"), mpf("1.5"), mpf("0.5")))
    print("exp_v_pdf(0.3,1.0,2) =", exp_v_density(mpf("0.3"), mpf("1.0"), 2))
    print("free_pdf(0.3,2) =", free_pdf(mpf("0.3"), 2))
    print("free_pdf(0.7,1) =", free_pdf(mpf("0.7"), 1))
    for al in ["0.2", "0.1", "0.05"]:
        al = mpf(al)
        x = mpf(2)
        print("free image at x=2, alpha=%s:" % al, free_pdf(al, x ** (1 / al)) * x ** (1 / al - 1) / al)
    # H_{1,1}^{1,0}[x^2|(0,2a);(0,2)] at a=1/2, x=1 via its defining Mellin-Barnes integral
    al = mpf("0.5")
    g = 0.5
    f = lambda t: (gamma(2 * mpc(g, t)) / gamma(2 * al * mpc(g, t))).real
    print("H11 =", quad(f, [-inf, 0, inf]) / (2 * pi))
