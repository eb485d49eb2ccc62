"""Command-line interface.

Subcommands: modelset, verify, quasi, euler, freeset.  Every run writes a JSON
report embedding its full configuration; identical configuration and seed
reproduce byte-identical artifacts.  Exit codes: 0 success, 1 failed
certificate or property (witness reported), 2 configuration error, 3
generation failure or an uncoverable truncation.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from .covering import (
    NotSymmetric,
    Uncoverable,
    commensurable,
    covering_certificate,
    delone_check,
    maximal_free_set,
    verify_approximate_subgroup,
)
from .cutproject import (
    Window,
    approximate_ring_zp,
    generate_model_set,
    meyer_check,
    pullback_containment_check,
    quad_scheme,
    scheme_from_config,
    zp_ring_scheme,
    zp_scheme,
)
from .euler import RealMat2, cocycle_identity_check, euler_cocycle, random_det1
from .extension import default_generators, ext_ball, kernel_Delta
from .freewords import FreeWord, f2_ball, free_group_f2
from .groups import PointSet, pscaled_line, quad_line, rational_line
from .quasimorphism import (
    approximate_kernel,
    brooks_quasimorphism,
    empirical_defect,
    in_brooks_A,
    nearest_integer_qh,
)
from .scalars import parse_pscaled, parse_quad, parse_rational


def _out_dir(args) -> Path:
    out = args.out_dir or os.environ.get("APXLAT_OUT") or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_report(args, name: str, payload: dict) -> Path:
    from .report import write_json

    payload = {"config": _config_echo(args), **payload}
    path = _out_dir(args) / name
    write_json(path, payload)
    return path


def _config_echo(args) -> dict:
    # output location is not part of the mathematical configuration; leaving
    # it out keeps reports byte-identical across relocated reruns
    skip = {"func", "out_dir", "config"}
    out = {}
    for k, v in vars(args).items():
        if k in skip:
            continue
        out[k] = str(v) if isinstance(v, Fraction) else v
    return out


def _fail(message: str, code: int):
    print(f"error: {message}", file=sys.stderr)
    raise SystemExit(code)


def _scheme_config_from_args(args) -> dict:
    cfg = {"scheme": args.scheme}
    for key in ("d", "p", "window", "window_exp", "eps", "height"):
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    return cfg


def _build_scheme(args):
    try:
        return scheme_from_config(_scheme_config_from_args(args))
    except (KeyError, ValueError) as exc:
        _fail(f"bad scheme configuration: {exc}", 2)


def _scheme_range(args):
    if args.scheme == "pisot":
        height = args.height if args.height is not None else 8
        return height - 1
    if args.range is None:
        _fail("--range is required for this scheme", 2)
    return Fraction(args.range)


def _generate(args):
    scheme = _build_scheme(args)
    try:
        if args.scheme == "zp-ring" and getattr(args, "n", None) is not None:
            return approximate_ring_zp(
                args.p or 2,
                args.n,
                rng=Fraction(args.range) if args.range else None,
                window_radius=Fraction(args.window or 1),
            )
        return generate_model_set(scheme, _scheme_range(args))
    except (ValueError, OverflowError) as exc:
        _fail(f"generation failed: {exc}", 3)


# -- modelset -------------------------------------------------------------------


def cmd_modelset(args) -> int:
    from .report import render_model_set_figure, write_model_set_csv

    ms = _generate(args)
    out = _out_dir(args)
    write_model_set_csv(out / "points.csv", ms)
    payload = {"provenance": ms.provenance(), "window_recheck": ms.recheck_window()}
    figure = None
    if not args.no_figure:
        if render_model_set_figure(out / "figure.svg", ms):
            figure = "figure.svg"
    payload["files"] = {"points": "points.csv", "figure": figure}
    _write_report(args, "provenance.json", payload)
    print(f"{ms.scheme.name}: {len(ms)} points -> {out / 'points.csv'}")
    return 0


# -- verify ---------------------------------------------------------------------


def _elements_from_file(args) -> PointSet:
    if args.region is None:
        _fail("--region is required with --elements-file", 2)
    region = Fraction(args.region)
    text = Path(args.elements_file).read_text(encoding="utf-8")
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    kind = args.scalar
    if kind == "rational":
        amb = rational_line()
        elems = [parse_rational(ln) for ln in lines]
    elif kind == "quad":
        amb = quad_line(args.d or 5)
        elems = [parse_quad(ln, args.d or 5) for ln in lines]
    elif kind == "pscaled":
        amb = pscaled_line(args.p or 2)
        elems = [parse_pscaled(ln, args.p or 2) for ln in lines]
    elif kind == "word":
        amb = free_group_f2()
        elems = [FreeWord(ln) for ln in lines]
    else:
        _fail(f"unknown scalar kind {kind!r}", 2)
    return PointSet(amb, elems, region)


def _verify_target(args) -> PointSet:
    if args.elements_file:
        return _elements_from_file(args)
    return _generate(args).points


def cmd_verify(args) -> int:
    check = args.check
    payload: dict = {"check": check}
    code = 0
    try:
        if check == "approx-subgroup":
            x = _verify_target(args)
            margin = Fraction(args.margin) if args.margin else None
            cert = verify_approximate_subgroup(x, interior_margin=margin)
            payload["certificate"] = cert.as_dict()
            payload["translate_count"] = len(cert)
        elif check == "commensurable":
            if args.window_b is None:
                _fail("--window-b is required for commensurable", 2)
            scheme_a = _build_scheme(args)
            b_args = argparse.Namespace(**vars(args))
            b_args.window = args.window_b
            scheme_b = _build_scheme(b_args)
            rng = _scheme_range(args)
            region = Fraction(args.region) if args.region else rng / 2
            xs = generate_model_set(scheme_a, rng).points
            ys = generate_model_set(scheme_b, rng).points
            ca, cb = commensurable(xs, ys, region)
            payload["certificates"] = [ca.as_dict(), cb.as_dict()]
        elif check == "meyer":
            ms = _generate(args)
            region = Fraction(args.region) if args.region else Fraction(ms.range) / 2
            m = _meyer_candidate(args, ms)
            report = meyer_check(m, ms, region)
            payload["meyer"] = report.as_dict()
            if not report.subset_ok:
                code = 1
            elif report.failure is not None:
                code = 3
        elif check == "delone":
            ms = _generate(args)
            interior = (
                Fraction(args.interior)
                if args.interior
                else Fraction(ms.range) / 2
            )
            rep = delone_check(
                ms.points, interior, probe_spacing=Fraction(args.spacing)
            )
            payload["delone"] = rep.as_dict()
            if not args.no_figure:
                from .report import render_gap_figure

                if rep.gap_alphabet and render_gap_figure(
                    _out_dir(args) / "gaps.svg",
                    rep.gap_alphabet,
                    rep.min_gap,
                    rep.covering_radius,
                ):
                    payload["files"] = {"figure": "gaps.svg"}
        elif check == "pullback":
            scheme = _build_scheme(args)
            rng = _scheme_range(args)
            margin = Fraction(args.margin) if args.margin else None
            rep = pullback_containment_check(scheme, rng, interior_margin=margin)
            payload["pullback"] = rep.as_dict()
            if not rep.containment_ok:
                code = 1
        else:
            _fail(f"unknown check {check!r}", 2)
    except NotSymmetric as exc:
        payload["failure"] = {
            "kind": "not-symmetric",
            "message": str(exc),
            "witness": str(exc.witness),
        }
        code = 1
    except Uncoverable as exc:
        payload["failure"] = {
            "kind": "uncoverable",
            "message": str(exc),
            "witness": None if exc.witness is None else str(exc.witness),
        }
        code = 3
    path = _write_report(args, "verify_report.json", payload)
    status = "ok" if code == 0 else f"FAILED (exit {code})"
    print(f"verify {check}: {status} -> {path}")
    return code


def _meyer_candidate(args, ms) -> PointSet:
    pts = ms.points
    if args.m_file:
        ns = argparse.Namespace(**vars(args))
        ns.elements_file = args.m_file
        ns.region = args.region or str(ms.range)
        ns.scalar = args.scalar or _default_scalar_for_scheme(args.scheme)
        return _elements_from_file(ns)
    if args.m_halfline:
        kept = [e for e in pts.elements if e >= 0]
        return PointSet(pts.ambient, kept, pts.region)
    k = args.m_drop_every or 3
    kept = [e for i, e in enumerate(pts.elements) if i % k != 0]
    return PointSet(pts.ambient, kept, pts.region)


def _default_scalar_for_scheme(kind):
    return {"fibonacci": "quad", "quad": "quad", "zp": "pscaled", "zp-ring": "pscaled"}.get(
        kind, "rational"
    )


# -- quasi ----------------------------------------------------------------------


def cmd_quasi_brooks(args) -> int:
    w = FreeWord(args.w)
    if not w or not w.is_cyclically_reduced():
        _fail(f"w must be nontrivial and cyclically reduced, got {args.w!r}", 2)
    q = brooks_quasimorphism(w)
    ball = f2_ball(args.ball)
    payload: dict = {"w": str(w), "ball_radius": args.ball, "ball_size": len(ball)}

    x, y = FreeWord("x"), FreeWord("y")
    order = {}
    for n in range(-args.order_range, args.order_range + 1):
        if n == 0:
            continue
        order[str(n)] = in_brooks_A(w, (x**n) * y)
    payload["xny_in_A"] = order

    if args.defect_ball:
        dball = f2_ball(args.defect_ball)
        payload["empirical_defect"] = {
            "ball_radius": args.defect_ball,
            "value": str(empirical_defect(q, dball)),
        }

    code = 0
    kernel = approximate_kernel(q, Fraction(args.kernel), ball)
    payload["kernel"] = {"bound": str(Fraction(args.kernel)), "size": len(kernel)}
    try:
        cert = verify_approximate_subgroup(kernel)
        payload["kernel"]["certificate"] = cert.as_dict()
        payload["kernel"]["translate_count"] = len(cert)
    except Uncoverable as exc:
        payload["kernel"]["failure"] = str(exc)
        code = 3
    path = _write_report(args, "quasi_brooks_report.json", payload)
    print(
        f"brooks w={w}: kernel size {len(kernel)}, "
        f"|F| = {payload['kernel'].get('translate_count')} -> {path}"
    )
    return code


def cmd_quasi_nearint(args) -> int:
    if args.seed is None:
        _fail("--seed is mandatory for sampled checks", 2)
    gamma = Fraction(args.gamma)
    rng = random.Random(args.seed)
    counts = {-1: 0, 0: 0, 1: 0}
    outliers = 0
    for _ in range(args.pairs):
        s = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 1000))
        t = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 1000))
        d = (
            nearest_integer_qh(gamma, s + t)
            - nearest_integer_qh(gamma, s)
            - nearest_integer_qh(gamma, t)
        )
        if d in counts:
            counts[d] += 1
        else:
            outliers += 1
    payload = {
        "gamma": str(gamma),
        "pairs": args.pairs,
        "defect_counts": {str(k): v for k, v in counts.items()},
        "outliers": outliers,
        "max_defect": max(abs(k) for k, v in counts.items() if v) if args.pairs else 0,
    }
    code = 0 if outliers == 0 else 1
    path = _write_report(args, "quasi_nearint_report.json", payload)
    print(f"nearint gamma={gamma}: defects {payload['defect_counts']} -> {path}")
    return code


# -- euler ----------------------------------------------------------------------


def cmd_euler(args) -> int:
    if args.seed is None:
        _fail("--seed is mandatory for sampled checks", 2)
    rng = random.Random(args.seed)
    betas = set()
    max_residual = 0.0
    failures = 0
    for _ in range(args.triples):
        g, h, k = (random_det1(rng, args.entry_bound) for _ in range(3))
        if not cocycle_identity_check(g, h, k):
            failures += 1
        for a, b in ((g, h), (h, k)):
            beta, residual = euler_cocycle(a, b)
            betas.add(beta)
            max_residual = max(max_residual, residual)
    import math

    r_pi = RealMat2.rotation(math.pi)
    beta_pi, _ = euler_cocycle(r_pi, r_pi)
    payload = {
        "triples": args.triples,
        "identity_failures": failures,
        "beta_values": sorted(betas),
        "max_residual": max_residual,
        "beta_half_turn_squared": beta_pi,
    }
    code = 0 if failures == 0 and betas <= {0, 1} and beta_pi == 1 else 1
    path = _write_report(args, "euler_report.json", payload)
    print(
        f"euler: {args.triples} triples, {failures} failures, "
        f"beta values {sorted(betas)} -> {path}"
    )
    return code


def cmd_euler_kernel(args) -> int:
    if args.seed is None:
        _fail("--seed is mandatory for sampled checks", 2)
    gens = default_generators(args.p, include_diag=not args.no_diag)
    ball = ext_ball(gens, args.ball)
    delta_ball = kernel_Delta(ball, bound=Fraction(args.bound))
    payload: dict = {
        "p": args.p,
        "ball_length": args.ball,
        "ball_size": len(ball),
        "kernel_size": len(delta_ball),
    }
    code = 0
    try:
        cert = verify_approximate_subgroup(delta_ball)
        payload["certificate"] = cert.as_dict()
    except Uncoverable as exc:
        payload["failure"] = str(exc)
        code = 3
    path = _write_report(args, "euler_kernel_report.json", payload)
    print(f"kernel Delta: {len(delta_ball)} of {len(ball)} elements -> {path}")
    return code


# -- freeset --------------------------------------------------------------------


def cmd_freeset(args) -> int:
    try:
        lo, hi = (int(v) for v in args.y.split(":"))
        steps = sorted({abs(int(v)) for v in args.x.split(",") if int(v) != 0})
        if not steps and args.x.strip():
            raise ValueError("X reduced to nothing")
    except ValueError as exc:
        _fail(f"bad --y or --x: {exc}", 2)
    amb = rational_line()
    y = PointSet(amb, (Fraction(k) for k in range(lo, hi + 1)), max(abs(lo), abs(hi)))
    x = PointSet(
        amb,
        (Fraction(s) * sgn for s in steps for sgn in (1, -1)),
        max(steps, default=0),
    )
    b = maximal_free_set(y, x)
    blocked = {e + s * sgn for e in b for s in steps for sgn in (1, -1)}
    maximal = all(e in b or e in blocked for e in y)
    free = all((e - f) not in x for e in b for f in b)
    payload = {
        "y": [str(e) for e in y],
        "x": [str(e) for e in x],
        "b": [str(e) for e in b],
        "free": free,
        "maximal": maximal,
    }
    path = _write_report(args, "freeset_report.json", payload)
    print(f"freeset: |B| = {len(b)}, free={free}, maximal={maximal} -> {path}")
    return 0 if free and maximal else 1


# -- parser ----------------------------------------------------------------------


def _add_scheme_options(p: argparse.ArgumentParser):
    p.add_argument(
        "--scheme",
        choices=["fibonacci", "quad", "zp", "zp-ring", "pisot"],
        help="scheme kind",
    )
    p.add_argument("--d", type=int, help="square-free field parameter")
    p.add_argument("--p", type=int, help="prime for Z[1/p] schemes")
    p.add_argument("--window", help="real window radius (exact rational)")
    p.add_argument("--window-exp", type=int, help="p-adic window exponent n (radius p^n)")
    p.add_argument("--eps", help="matrix window radius (exact rational)")
    p.add_argument("--height", type=int, help="entry height cap for matrix schemes")
    p.add_argument("--range", help="physical truncation range (exact rational)")
    p.add_argument("--n", type=int, help="denominator exponent for zp-ring sets")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--out-dir", help="output directory (default $APXLAT_OUT or .)")
    p.add_argument("--config", help="JSON file supplying defaults for these options")
    p.add_argument("--no-figure", action="store_true", help="skip figure rendering")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apxlat",
        description="Construct approximate-group model sets and certify their "
        "defining properties at finite truncation scale.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_model = sub.add_parser("modelset", help="generate a cut-and-project model set")
    _add_scheme_options(p_model)
    _add_common(p_model)
    p_model.set_defaults(func=cmd_modelset)

    p_verify = sub.add_parser("verify", help="certify properties of a point set")
    p_verify.add_argument(
        "--check",
        required=True,
        choices=["approx-subgroup", "commensurable", "meyer", "delone", "pullback"],
    )
    _add_scheme_options(p_verify)
    _add_common(p_verify)
    p_verify.add_argument("--margin", help="interior margin for the certificate")
    p_verify.add_argument("--region", help="certification region")
    p_verify.add_argument("--window-b", help="second window for commensurable")
    p_verify.add_argument("--interior", help="interior region for delone")
    p_verify.add_argument("--spacing", default="1/4", help="delone probe spacing")
    p_verify.add_argument("--elements-file", help="explicit point list, one per line")
    p_verify.add_argument(
        "--scalar", choices=["rational", "quad", "pscaled", "word"], help="scalar kind "
        "for --elements-file",
    )
    p_verify.add_argument("--m-file", help="meyer candidate point list")
    p_verify.add_argument(
        "--m-drop-every", type=int, help="meyer candidate: drop every k-th point"
    )
    p_verify.add_argument(
        "--m-halfline", action="store_true", help="meyer candidate: keep x >= 0"
    )
    p_verify.set_defaults(func=cmd_verify)

    p_quasi = sub.add_parser("quasi", help="quasimorphism reports")
    quasi_sub = p_quasi.add_subparsers(dest="quasi_command", required=True)

    p_brooks = quasi_sub.add_parser("brooks", help="Brooks counting quasimorphism")
    p_brooks.add_argument("--w", default="xy", help="pattern word over x X y Y")
    p_brooks.add_argument("--ball", type=int, default=6, help="kernel ball radius")
    p_brooks.add_argument("--kernel", default="0", help="kernel bound")
    p_brooks.add_argument(
        "--defect-ball", type=int, default=4, help="defect scan radius (0 to skip)"
    )
    p_brooks.add_argument("--order-range", type=int, default=20)
    _add_common(p_brooks)
    p_brooks.set_defaults(func=cmd_quasi_brooks)

    p_near = quasi_sub.add_parser("nearint", help="nearest-integer quasi-homomorphism")
    p_near.add_argument("--gamma", default="1/2", help="cut parameter in (0,1]")
    p_near.add_argument("--pairs", type=int, default=100000)
    p_near.add_argument("--seed", type=int)
    _add_common(p_near)
    p_near.set_defaults(func=cmd_quasi_nearint)

    p_euler = sub.add_parser("euler", help="Euler cocycle checks")
    p_euler.add_argument("--triples", type=int, default=10000)
    p_euler.add_argument("--seed", type=int)
    p_euler.add_argument("--entry-bound", type=float, default=2.0)
    _add_common(p_euler)
    p_euler.set_defaults(func=cmd_euler)

    p_ek = sub.add_parser(
        "euler-kernel", help="approximate kernel of the twisted-extension fiber map"
    )
    p_ek.add_argument("--p", type=int, default=2)
    p_ek.add_argument("--ball", type=int, default=3)
    p_ek.add_argument("--bound", default="2")
    p_ek.add_argument("--no-diag", action="store_true", help="drop the diagonal generator")
    p_ek.add_argument("--seed", type=int)
    _add_common(p_ek)
    p_ek.set_defaults(func=cmd_euler_kernel)

    p_free = sub.add_parser("freeset", help="maximal X-free subset of an interval")
    p_free.add_argument("--y", required=True, help="integer interval lo:hi")
    p_free.add_argument("--x", required=True, help="symmetric steps, e.g. 1,2")
    _add_common(p_free)
    p_free.set_defaults(func=cmd_freeset)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        try:
            overrides = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            _fail(f"bad config file: {exc}", 2)
        for key, value in overrides.items():
            dest = key.replace("-", "_")
            if getattr(args, dest, None) in (None, False):
                setattr(args, dest, value)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (ValueError, OSError) as exc:
        _fail(str(exc), 3)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
