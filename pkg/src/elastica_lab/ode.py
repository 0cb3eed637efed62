"""Fixed-step RK4 / adaptive RK45 over flat real-vector states, and Simpson quadrature."""

import numpy as np


class IntegrationError(RuntimeError):
    """The right-hand side failed or the step controller gave up."""

    def __init__(self, message, step_index=None):
        super().__init__(message)
        self.step_index = step_index


def _rk4_step(rhs, t, y, h):
    k1 = rhs(t, y)
    k2 = rhs(t + 0.5 * h, y + 0.5 * h * k1)
    k3 = rhs(t + 0.5 * h, y + 0.5 * h * k2)
    k4 = rhs(t + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(rhs, initial, step, count, t0=0.0):
    """Classical RK4 with fixed step.

    rhs(t, y) -> dy/dt on flat float arrays.  Returns (ts, ys) with
    ys.shape == (count + 1, len(initial)) at uniform spacing `step`.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    if count < 1:
        raise ValueError("count must be >= 1")
    y = np.asarray(initial, dtype=float).copy()
    ts = t0 + step * np.arange(count + 1)
    ys = np.empty((count + 1, y.size))
    ys[0] = y
    for i in range(count):
        try:
            y = _rk4_step(rhs, ts[i], y, step)
        except Exception as exc:
            raise IntegrationError(f"rhs failed at step {i}: {exc}", i) from exc
        if not np.all(np.isfinite(y)):
            raise IntegrationError(f"state became non-finite at step {i}", i)
        ys[i + 1] = y
    return ts, ys


# Dormand-Prince 5(4) tableau.
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)


def _dp_step(rhs, t, y, h):
    k = []
    for i in range(7):
        yi = y.copy()
        for j, a in enumerate(_DP_A[i]):
            yi += h * a * k[j]
        k.append(rhs(t + _DP_C[i] * h, yi))
    k = np.array(k)
    y5 = y + h * (_DP_B5 @ k)
    y4 = y + h * (_DP_B4 @ k)
    return y5, np.max(np.abs(y5 - y4))


def _advance_adaptive(rhs, t, y, span, rtol, atol, step_index):
    """Advance exactly `span` with embedded-error-controlled substeps."""
    remaining = span
    h = span
    while remaining > 0.0:
        h = min(h, remaining)
        for _ in range(60):
            try:
                y_new, err = _dp_step(rhs, t, y, h)
            except Exception as exc:
                raise IntegrationError(
                    f"rhs failed at step {step_index}: {exc}", step_index
                ) from exc
            scale = atol + rtol * max(np.max(np.abs(y)), np.max(np.abs(y_new)))
            if err <= scale or h <= 1e-14 * span:
                break
            h *= max(0.1, 0.9 * (scale / err) ** 0.2)
        else:
            raise IntegrationError(
                f"step control failed to converge at step {step_index}", step_index
            )
        t += h
        remaining -= h
        y = y_new
        if err > 0.0:
            h *= min(5.0, 0.9 * (scale / err) ** 0.2)
    return y


def integrate_rk45(rhs, initial, step, count, t0=0.0, rtol=1e-10, atol=1e-12):
    """Adaptive Dormand-Prince 5(4) emitting the same uniform grid as `integrate`."""
    if step <= 0.0:
        raise ValueError("step must be positive")
    if count < 1:
        raise ValueError("count must be >= 1")
    y = np.asarray(initial, dtype=float).copy()
    ts = t0 + step * np.arange(count + 1)
    ys = np.empty((count + 1, y.size))
    ys[0] = y
    for i in range(count):
        y = _advance_adaptive(rhs, ts[i], y, step, rtol, atol, i)
        if not np.all(np.isfinite(y)):
            raise IntegrationError(f"state became non-finite at step {i}", i)
        ys[i + 1] = y
    return ts, ys


def simpson(samples, step):
    """Composite Simpson over uniform samples, trapezoid on a trailing even interval."""
    y = np.asarray(samples, dtype=float)
    if y.ndim != 1 or y.size < 3:
        raise ValueError("simpson needs at least 3 samples")
    if step <= 0.0:
        raise ValueError("step must be positive")
    n = y.size - 1  # number of intervals
    m = n if n % 2 == 0 else n - 1
    total = step / 3.0 * (y[0] + 4.0 * np.sum(y[1:m:2]) + 2.0 * np.sum(y[2:m:2]) + y[m])
    if m < n:
        total += 0.5 * step * (y[m] + y[m + 1])
    return float(total)


def cumulative_simpson(samples, step):
    """Cumulative integral on the sample grid, Simpson-order accurate.

    Even endpoints use composite Simpson; odd ones add the integral over the
    last single interval from the quadratic through the three nearest samples.
    Accepts (N,) or (N, k) samples; integrates along axis 0.
    """
    y = np.asarray(samples, dtype=float)
    if step <= 0.0:
        raise ValueError("step must be positive")
    n = y.shape[0]
    out = np.zeros_like(y)
    if n == 1:
        return out
    if n == 2:
        out[1] = 0.5 * step * (y[0] + y[1])
        return out
    # Simpson pair contributions: integral over [2i, 2i+2].
    pair = step / 3.0 * (y[0 : n - 2 : 2] + 4.0 * y[1 : n - 1 : 2] + y[2:n:2])
    even = np.cumsum(pair, axis=0)
    out[2::2] = even
    # Odd endpoints: quadratic fit through three nearest samples, integrated
    # over the one remaining interval.
    out[1] = step / 12.0 * (5.0 * y[0] + 8.0 * y[1] - y[2])
    if n > 3:
        # out[2k+1] = out[2k] + integral over [2k, 2k+1] via the quadratic on
        # samples (2k-1, 2k, 2k+1):  h/12 * (-y[2k-1] + 8 y[2k] + 5 y[2k+1]).
        trail = step / 12.0 * (
            -y[1 : n - 2 : 2] + 8.0 * y[2 : n - 1 : 2] + 5.0 * y[3:n:2]
        )
        out[3::2] = out[2:-1:2] + trail
    return out


def convergence_slope(hs, errors):
    """Least-squares slope of log(error) vs log(h)."""
    lh = np.log(np.asarray(hs, dtype=float))
    le = np.log(np.asarray(errors, dtype=float))
    return float(np.polyfit(lh, le, 1)[0])
