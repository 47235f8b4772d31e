#!/usr/bin/env python3
"""Regenerates tests/golden/golden_values.hpp.

Reference values come from two independent paths:
  * mpmath (50-digit arithmetic) for closed-form scalars and a single
    ray-root spot check of the ellipse intersection;
  * a standalone numpy quadrature of the contact-stress surface integral
    (trapezoid rule, endpoints included) at 8x/16x the production grid,
    written directly from the ellipse equation rather than shared with
    the C++ implementation.

Run from the repo root:  python3 tests/golden/gen_golden.py
"""
import mpmath as mp
import numpy as np

mp.mp.dps = 50

OUT = "tests/golden/golden_values.hpp"


def tilt_axis_angle():
    # axis-angle component of a 2 deg tilt at 45 deg azimuth
    th = mp.radians(2)
    return mp.atan(mp.tan(th) * mp.cos(mp.radians(45)))


def slice_center_opx():
    # lateral slice-center offset at the peg tip (s = 0) for
    # d_x = 0.05 mm, tilt 2 deg toward +X, insertion depth 5 mm
    d_x = mp.mpf("0.05e-3")
    l = mp.mpf("5e-3")
    th = mp.radians(2)
    s_u = l * mp.cos(th)
    return d_x + (mp.mpf(0) - s_u / 2) * mp.tan(th)


def gamma_example():
    # boundary tilt angle for L=10mm, H=5mm, mu=0.3, R=5.05mm, l=5mm
    L, H, mu, R, l = (mp.mpf("10e-3"), mp.mpf("5e-3"), mp.mpf("0.3"),
                      mp.mpf("5.05e-3"), mp.mpf("5e-3"))
    return mp.atan((-l / 2 + L + H + mu * R) / R)


# geometry for the frozen wrench: interference fit, pinned constants
GR, Gr = mp.mpf("5.03e-3"), mp.mpf("5.04e-3")
GL, GH = mp.mpf("10e-3"), mp.mpf("5e-3")
GK, GMU = mp.mpf("1e8"), mp.mpf("0.5")
XD, XL, XTH = mp.mpf("0.02e-3"), mp.mpf("5e-3"), mp.radians(1)


def ray_root(o_px, o_py, alpha, r, cth):
    # largest root of ((t cos(a) - o_px) cth)^2 + (t sin(a) - o_py)^2 = r^2
    ca, sa = mp.cos(alpha), mp.sin(alpha)
    A = (ca * cth) ** 2 + sa ** 2
    B = -2 * (o_px * ca * cth ** 2 + o_py * sa)
    C = (o_px * cth) ** 2 + o_py ** 2 - r ** 2
    disc = B * B - 4 * A * C
    if disc < 0:
        return mp.mpf(0)
    root = (-B + mp.sqrt(disc)) / (2 * A)
    return root if root > 0 else mp.mpf(0)


def ray_root_spot():
    # one ray of the frozen-wrench configuration, high-precision
    cth = mp.cos(XTH)
    s_u = XL * cth
    s = mp.mpf("0.3") * s_u
    o_px = XD + (s - s_u / 2) * mp.tan(XTH)
    return ray_root(o_px, mp.mpf(0), mp.mpf("0.3"), Gr, cth), s


def trap_wrench(n_s, n_a):
    # standalone trapezoid quadrature of the stress integral
    R, r, L, H, k, mu = map(float, (GR, Gr, GL, GH, GK, GMU))
    d_x, l, th = float(XD), float(XL), float(XTH)
    cth = np.cos(th)
    s_u = l * cth
    s = np.linspace(0.0, s_u, n_s + 1)
    a = np.linspace(-np.pi, np.pi, n_a + 1)
    ws = np.full(n_s + 1, s_u / n_s); ws[0] *= 0.5; ws[-1] *= 0.5
    wa = np.full(n_a + 1, 2 * np.pi / n_a); wa[0] *= 0.5; wa[-1] *= 0.5
    ca, sa = np.cos(a), np.sin(a)
    o_px = d_x + (s - s_u / 2) * np.tan(th)
    A = (ca * cth) ** 2 + sa ** 2
    B = -2.0 * (o_px[:, None] * ca * cth ** 2)
    C = (o_px[:, None] * cth) ** 2 - r ** 2
    disc = B * B - 4.0 * A * C
    t = np.where(disc >= 0, (-B + np.sqrt(np.maximum(disc, 0.0))) / (2 * A), 0.0)
    t = np.where(t > 0, t, 0.0)
    p = np.where(t >= R, k * (t - R) / R, 0.0)
    lever = (L + H - s_u + s + mu * R)
    w2 = ws[:, None] * wa[None, :]
    F_x = R * np.sum(w2 * p * ca)
    F_y = R * np.sum(w2 * p * sa)
    F_z = mu * R * np.sum(w2 * p)
    M_x = R * np.sum(w2 * p * sa * lever[:, None])
    M_y = R * np.sum(w2 * p * ca * lever[:, None])
    return np.array([F_x, F_y, F_z, M_x, M_y])


def main():
    t_axis = tilt_axis_angle()
    opx = slice_center_opx()
    gam = gamma_example()
    root, s_at = ray_root_spot()
    w8 = trap_wrench(512, 2048)
    w16 = trap_wrench(1024, 4096)
    drift = np.max(np.abs(w8 - w16)) / np.linalg.norm(w16)
    lines = []
    lines.append("// Generated by tests/golden/gen_golden.py. Do not edit by hand.")
    lines.append("#pragma once")
    lines.append("")
    lines.append("namespace golden {")
    lines.append("")
    lines.append("// atan(tan(2 deg) * cos(45 deg)), radians")
    lines.append(f"inline constexpr double tilt_axis_angle_2deg_45az = {mp.nstr(t_axis, 17)};")
    lines.append("")
    lines.append("// slice-center x at s=0 for d_x=0.05mm, l=5mm, tilt 2 deg toward +X, meters")
    lines.append(f"inline constexpr double slice_center_opx_tip = {mp.nstr(opx, 17)};")
    lines.append("")
    lines.append("// boundary tilt angle, L=10mm H=5mm mu=0.3 R=5.05mm l=5mm, radians")
    lines.append(f"inline constexpr double gamma_l5mm = {mp.nstr(gam, 17)};")
    lines.append("")
    lines.append("// ray root of the frozen-wrench configuration at s=0.3*s_u, alpha=0.3 rad, meters")
    lines.append(f"inline constexpr double ray_root_spot_s = {mp.nstr(s_at, 17)};")
    lines.append(f"inline constexpr double ray_root_spot = {mp.nstr(root, 17)};")
    lines.append("")
    lines.append("// wrench for interference fit R=5.03mm r=5.04mm L=10mm H=5mm k=1e8 mu=0.5,")
    lines.append("// features (d_x=0.02mm, 0, l=5mm, 0, theta_y=1 deg); trapezoid rule, grid 512x2048.")
    lines.append(f"// Grid 1024x4096 agrees within {drift:.2e} of the wrench norm.")
    names = ["F_x", "F_y", "F_z", "M_x", "M_y"]
    for n, v in zip(names, w8):
        lines.append(f"inline constexpr double wrench_{n} = {float(v)!r};")
    lines.append("")
    lines.append("}  // namespace golden")
    lines.append("")
    with open(OUT, "w") as f:
        f.write("\n".join(lines))
    print(f"wrote {OUT}")
    print(f"  grid drift 512x2048 -> 1024x4096: {drift:.3e}")
    for n, v in zip(names, w8):
        print(f"  {n} = {v!r}")


if __name__ == "__main__":
    main()
