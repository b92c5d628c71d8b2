"""Independent quadrature oracles and the acceptance report hook."""

import math

import pytest
from scipy import integrate

ACCEPTANCE_LINES = []


def e1_quad(x):
    """E1(x) by adaptive quadrature of int_x^inf exp(-y)/y dy.

    Substituting y = x e^s gives int_0^inf exp(-x e^s) ds, which is smooth
    and negligible once x e^s > 800.
    """
    s_max = math.log(800.0 / x) if x < 800.0 else 1.0
    pieces = [0.0]
    if s_max > 4.0:
        pieces += [s_max - 4.0]
    pieces += [s_max, s_max + 2.0]
    total = 0.0
    for a, b in zip(pieces, pieces[1:]):
        val, _ = integrate.quad(lambda s: math.exp(-x * math.exp(s)), a, b,
                                epsabs=0.0, epsrel=1e-12, limit=200)
        total += val
    return total


def pulse_quad(t, start, duration, amplitude):
    """Concentration (units of S) by quadrature over emission time.

    Integrates amplitude * exp(-1/(t - tau)) / (t - tau) over the emitting
    part of [start, start + duration], in the variable u = ln(t - tau).
    """
    hi = t - start
    if hi <= 0:
        return 0.0
    lo = max(t - start - duration, 0.0)
    # exp(-1/s) < 1e-320 for s < 1/740.
    u_lo = math.log(max(lo, 1.0 / 740.0))
    u_hi = math.log(hi)
    if u_hi <= u_lo:
        return 0.0
    val, _ = integrate.quad(lambda u: math.exp(-math.exp(-u)), u_lo, u_hi,
                            epsabs=0.0, epsrel=1e-12, limit=200)
    return amplitude * val


@pytest.fixture
def acceptance():
    def record(label, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] {label}" + (f"  ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
