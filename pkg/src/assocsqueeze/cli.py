"""Command-line front end: every command writes a deterministic CSV (or JSON)
table with a ``#`` metadata header.

Exit codes: 0 success, 1 domain/parse error, 2 numerical failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__, fock, nonclassical, polyfam, squeezed, verify, wigner
from .errors import DomainError, NumericError, PoleError, RangeError, SeriesError, TruncationError

EXIT_OK, EXIT_DOMAIN, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3

STATE_KEYS = ("glauber", "sqvac", "oddsq", "squeezed", "assoc", "distorted", "fock:<n>", "added:<n>")
_FAMILY_OF = {
    "glauber": "glauber", "sqvac": "squeezed_vacuum", "oddsq": "odd_photon",
    "squeezed": "conventional", "assoc": "associated", "distorted": "distorted_coherent",
}

FIGURE_MAP = """\
figure content -> command:
  squeezing parameter tau over the unit disk ........... tau-surface
  Hermite and associated polynomial tables, zeros ...... polytable (sweep --alpha)
  Wigner functions of the squeezed, odd-photon,
    distorted and photon-added states .................. wigner
  photon-number distributions, plus vs minus family .... stats
  trace distance between the plus and minus states ..... distance
  mean photon numbers of both families ................. meanphotons
  variances of the distorted quadratures ............... variances
  linear entropy after a 50:50 beam splitter ........... entropy
  invariant suite ...................................... verify
"""


class SpecParseError(DomainError):
    def __init__(self, text, column, message):
        super().__init__(f"cannot parse {text!r} at column {column}: {message}")
        self.column = column


def _float_at(text: str, start: int, field: str) -> float:
    try:
        v = float(field)
    except ValueError:
        raise SpecParseError(text, start + 1, f"expected a number, got {field!r}") from None
    if not math.isfinite(v):
        raise SpecParseError(text, start + 1, "value must be finite")
    return v


def _fields(text: str, sep: str):
    """Split keeping the 0-based start column of each field."""
    out, pos = [], 0
    for part in text.split(sep):
        out.append((pos, part))
        pos += len(part) + 1
    return out


def parse_complex(text: str) -> complex:
    """``re`` or ``re,im``."""
    parts = _fields(text, ",")
    if len(parts) > 2:
        raise SpecParseError(text, parts[2][0] + 1, "complex values take at most two fields 're,im'")
    vals = [_float_at(text, s, f.strip()) for s, f in parts]
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def _parse_range(text: str, offset: int, full: str):
    parts = _fields(text, ":")
    if len(parts) != 3:
        raise SpecParseError(full, offset + 1, "a range reads 'start:stop:count'")
    lo = _float_at(full, offset + parts[0][0], parts[0][1])
    hi = _float_at(full, offset + parts[1][0], parts[1][1])
    s, f = parts[2]
    try:
        n = int(f)
    except ValueError:
        raise SpecParseError(full, offset + s + 1, f"count must be an integer, got {f!r}") from None
    if n < 1:
        raise SpecParseError(full, offset + s + 1, "count must be positive")
    if n > 1 and not hi > lo:
        raise SpecParseError(full, offset + 1, "stop must exceed start")
    return lo, hi, n


def parse_sweep(text: str):
    """``start:stop:count`` -> (start, stop, count)."""
    return _parse_range(text, 0, text)


def parse_grid(text: str):
    """``a:b:n,c:d:m`` -> two (start, stop, count) axes."""
    parts = _fields(text, ",")
    if len(parts) != 2:
        raise SpecParseError(text, 1, "a grid reads 'a:b:n,c:d:m'")
    return tuple(_parse_range(f, s, text) for s, f in parts)


def parse_list(text: str):
    return [_float_at(text, s, f.strip()) for s, f in _fields(text, ",")]


def sweep_values(spec) -> np.ndarray:
    lo, hi, n = spec
    return np.linspace(lo, hi, n)


def build_state(key: str, alpha: complex, xi: complex, n_cut: int | None):
    """StateVector for a CLI state key."""
    if key.startswith("fock:") or key.startswith("added:"):
        head, _, num = key.partition(":")
        try:
            k = int(num)
        except ValueError:
            raise SpecParseError(key, len(head) + 2, f"photon number must be an integer, got {num!r}") from None
        if k < 0:
            raise SpecParseError(key, len(head) + 2, "photon number must be nonnegative")
        if head == "fock":
            return fock.basis_state(k, n_cut if n_cut is not None else k + 2)
        return fock.photon_added_coherent(alpha, n_cut, photons=k)
    if key not in _FAMILY_OF:
        raise SpecParseError(key, 1, f"unknown state key; expected one of {', '.join(STATE_KEYS)}")
    return squeezed.SqueezeParams(alpha, xi, _FAMILY_OF[key]).build(n_cut)


def _num(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


class Table:
    def __init__(self, columns, meta):
        self.columns = list(columns)
        self.meta = meta
        self.rows = []

    def add(self, *row):
        self.rows.append(row)

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {"meta": self.meta, "columns": self.columns,
                   "rows": [[v if isinstance(v, str) else (int(v) if isinstance(v, (int, np.integer)) else float(v))
                             for v in r] for r in self.rows]}
            return json.dumps(doc, sort_keys=True, indent=1) + "\n"
        head = [f"# {k}: {self.meta[k]}" for k in sorted(self.meta)]
        body = [", ".join(self.columns)] + [", ".join(_num(v) for v in r) for r in self.rows]
        return "\n".join(head + body) + "\n"


def _meta(args, **extra):
    m = {"library": f"assocsqueeze {__version__}", "command": args.command,
         "truncation_budget": repr(fock.DEFAULT_BUDGET)}
    for k in ("state", "alpha", "xi", "ncut", "grid", "sweep"):
        v = getattr(args, k, None)
        if v is not None:
            m[k] = str(v)
    m.update({k: str(v) for k, v in extra.items()})
    return m


def _c(v: complex):
    return v.real, v.imag


# commands ---------------------------------------------------------------


def cmd_tau_surface(args):
    t = Table(["r", "theta", "tau", "inv_tau"], _meta(args, r_steps=args.r_steps, theta_steps=args.theta_steps))
    if args.r_steps < 2 or args.theta_steps < 2:
        raise DomainError("tau-surface needs at least 2 steps in r and theta")
    for r in np.arange(args.r_steps) / args.r_steps:
        for th in -math.pi + 2 * math.pi * np.arange(args.theta_steps) / args.theta_steps:
            tau, _ = squeezed.tau(r * complex(math.cos(th), math.sin(th)))
            t.add(float(r), float(th), tau, 1 / tau)
    return t


def _closed(sign, n, alpha, xi):
    """Closed-form value and the route name, or blanks if no route applies."""
    try:
        if sign == "plus":
            return polyfam.p_plus_closed(n, alpha, xi), "hermite"
        if n == 0:
            return 0j, "table"
        try:
            return polyfam.p_minus_sum_form(n, alpha, xi), "quotient-sum"
        except PoleError:
            return polyfam.p_minus_hypergeometric(n, alpha, xi), "hypergeometric"
    except DomainError:
        return None, "none"


def cmd_polytable(args):
    alpha, xi = parse_complex(args.alpha), parse_complex(args.xi)
    families = ("plus", "minus") if args.family == "both" else (args.family,)
    t = Table(["family", "n", "re_p", "im_p", "re_closed", "im_closed", "closed_route"], _meta(args, n_max=args.nmax))
    for fam in families:
        seq = polyfam.sequence(fam, args.nmax, alpha, xi)
        for n in range(args.nmax + 1):
            cl, route = _closed(fam, n, alpha, xi)
            cre, cim = ("", "") if cl is None else _c(cl)
            t.add(fam, n, *_c(complex(seq[n])), cre, cim, route)
    return t


def _grid_axes(args):
    if args.grid is None:
        return wigner.DEFAULT_AXIS, wigner.DEFAULT_AXIS
    return parse_grid(args.grid)


def cmd_wigner(args):
    state = build_state(args.state, parse_complex(args.alpha), parse_complex(args.xi), args.ncut)
    re_ax, im_ax = _grid_axes(args)
    g = wigner.wigner_grid(state, re_ax, im_ax)
    t = Table(["re_z", "im_z", "w"], _meta(args, n_cut_used=state.n_cut, defect=repr(state.defect),
                                           convention="W_vacuum(0) = 1"))
    re, im = g.re_axis, g.im_axis
    for i in range(g.im_steps):
        for j in range(g.re_steps):
            t.add(float(re[j]), float(im[i]), float(g.values[i, j]))
    return t


def _alpha_sweep(args, default=(0.0, 6.0, 121)):
    return sweep_values(parse_sweep(args.sweep) if args.sweep else default)


def _phase(alpha: complex) -> complex:
    return alpha / abs(alpha) if alpha != 0 else 1.0


def cmd_stats(args):
    alpha0, xi = parse_complex(args.alpha), parse_complex(args.xi)
    t = Table(["alpha", "n", "p_n"], _meta(args, n_print=args.nmax))
    alphas = _alpha_sweep(args) * _phase(alpha0) if args.sweep else [alpha0]
    for a in alphas:
        p = squeezed.photon_probabilities(build_state(args.state, a, xi, args.ncut))
        for n in range(min(args.nmax, len(p) - 1) + 1):
            t.add(abs(a), n, float(p[n]))
    return t


def cmd_distance(args):
    xi = parse_complex(args.xi)
    t = Table(["alpha", "distance"], _meta(args))
    for a in _alpha_sweep(args):
        p, m = nonclassical.align(squeezed.conventional_squeezed(a, xi, args.ncut),
                                  squeezed.associated_squeezed(a, xi, args.ncut))
        t.add(float(a), nonclassical.trace_distance_pure(p, m))
    return t


def cmd_meanphotons(args):
    if args.grid:
        a_ax, x_ax = parse_grid(args.grid)
    else:
        a_ax, x_ax = (0.0, 6.0, 121), (0.0, 0.8, 5)
    t = Table(["alpha", "xi", "n_plus_closed", "n_plus", "n_minus", "n_minus_boundary"], _meta(args))
    for x in sweep_values(x_ax):
        for a in sweep_values(a_ax):
            sp = squeezed.conventional_squeezed(a, x, args.ncut)
            sm = squeezed.associated_squeezed(a, x, args.ncut)
            if a == 0:
                bnd = squeezed.mean_photon_minus_alpha0(x)
            elif x == 0:
                bnd = squeezed.mean_photon_minus_xi0(a)
            else:
                bnd = ""
            t.add(float(a), float(x), squeezed.mean_photon_plus_closed(a, x), squeezed.mean_photon_number(sp),
                  squeezed.mean_photon_number(sm), bnd)
    return t


def cmd_variances(args):
    alpha0, xi = parse_complex(args.alpha), parse_complex(args.xi)
    t = Table(["alpha", "var_x", "var_p", "cov_xp", "var_x2", "var_p2", "cov_x2p2", "comm2", "schrodinger_gap2"],
              _meta(args))
    for a in _alpha_sweep(args) * _phase(alpha0):
        st = build_state(args.state, a, xi, args.ncut)
        s1 = fock.quadrature_stats(st)
        s2 = fock.quadrature_stats(st, distorted=True)
        c2 = fock.commutator_mean(st, distorted=True)
        gap = s2.var_x * s2.var_p - (s2.cov_xp ** 2 + 0.25 * c2 ** 2)
        t.add(abs(a), *s1, *s2, c2, gap)
    return t


def cmd_entropy(args):
    xis = parse_list(args.xi_list)
    alpha0 = parse_complex(args.alpha)
    t = Table(["xi", "alpha", "linear_entropy"], _meta(args, xi_list=args.xi_list))
    for x in xis:
        for a in _alpha_sweep(args) * _phase(alpha0):
            st = build_state(args.state, a, x, args.ncut)
            t.add(float(x), abs(a), nonclassical.linear_entropy_after_bs(st))
    return t


def cmd_state(args):
    st = build_state(args.state, parse_complex(args.alpha), parse_complex(args.xi), args.ncut)
    t = Table(["n", "re_amp", "im_amp"], _meta(args, n_cut_used=st.n_cut, defect=repr(st.defect)))
    for n, c in enumerate(st.amp):
        t.add(n, c.real, c.imag)
    return t


def cmd_verify(args):
    entries = verify.run_suite(args.tolerance_profile)
    return entries


# driver -----------------------------------------------------------------


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="output file (default: stdout)")

    state = argparse.ArgumentParser(add_help=False)
    state.add_argument("--state", default="assoc", help="state key: " + " | ".join(STATE_KEYS))
    state.add_argument("--alpha", default="0", help="complex alpha as 're' or 're,im'")
    state.add_argument("--xi", default="0", help="complex xi as 're' or 're,im', |xi| < 1")
    state.add_argument("--ncut", type=int, default=None, help="Fock cutoff (default: automatic)")

    p = argparse.ArgumentParser(prog="assocsqueeze", description=__doc__.splitlines()[0],
                                epilog=FIGURE_MAP, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("tau-surface", parents=[common], help="tau = |1-xi|/|1+xi| over r in [0,1), theta in [-pi,pi)")
    s.add_argument("--r-steps", type=int, default=50)
    s.add_argument("--theta-steps", type=int, default=72)
    s.set_defaults(func=cmd_tau_surface)

    s = sub.add_parser("polytable", parents=[common], help="P_n of both polynomial families with closed-form check")
    s.add_argument("--family", choices=("plus", "minus", "both"), default="both")
    s.add_argument("--nmax", type=int, default=4)
    s.add_argument("--alpha", default="1")
    s.add_argument("--xi", default="1")
    s.set_defaults(func=cmd_polytable)

    s = sub.add_parser("wigner", parents=[common, state], help="Wigner function on a grid of z")
    s.add_argument("--grid", help="'a:b:n,c:d:m' for Re z and Im z (default -4:4:161 both)")
    s.set_defaults(func=cmd_wigner)

    s = sub.add_parser("stats", parents=[common, state], help="photon-number distribution, optionally swept in |alpha|")
    s.add_argument("--sweep", help="|alpha| sweep 'start:stop:count' (phase taken from --alpha)")
    s.add_argument("--nmax", type=int, default=30, help="largest photon number printed")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("distance", parents=[common], help="trace distance between plus and minus states vs alpha")
    s.add_argument("--xi", default="0.6")
    s.add_argument("--sweep", help="alpha sweep 'start:stop:count' (default 0:6:121)")
    s.add_argument("--ncut", type=int, default=None)
    s.set_defaults(func=cmd_distance)

    s = sub.add_parser("meanphotons", parents=[common], help="mean photon numbers on an (alpha, xi) grid")
    s.add_argument("--grid", help="'a0:a1:n,x0:x1:m' over real alpha and real xi (default 0:6:121,0:0.8:5)")
    s.add_argument("--ncut", type=int, default=None)
    s.set_defaults(func=cmd_meanphotons)

    s = sub.add_parser("variances", parents=[common, state], help="ordinary and distorted quadrature variances vs alpha")
    s.add_argument("--sweep", help="|alpha| sweep 'start:stop:count' (default 0:6:121)")
    s.set_defaults(func=cmd_variances)

    s = sub.add_parser("entropy", parents=[common, state], help="beam-splitter linear entropy vs alpha for several xi")
    s.add_argument("--xi-list", default="0,0.2,0.4,0.6,0.8", help="comma-separated real xi values")
    s.add_argument("--sweep", help="|alpha| sweep 'start:stop:count' (default 0:6:121)")
    s.set_defaults(func=cmd_entropy)

    s = sub.add_parser("state", parents=[common, state], help="Fock amplitudes of a state")
    s.set_defaults(func=cmd_state)

    s = sub.add_parser("verify", parents=[common], help="run the invariant suite; exit 0 iff all pass")
    s.add_argument("--tolerance-profile", default="default", help="default | loose | zero | <scale>")
    s.set_defaults(func=cmd_verify)
    return p


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _verify_text(entries, fmt, profile):
    if fmt == "json":
        return json.dumps({"profile": str(profile), "library": __version__,
                           "entries": [e.as_dict() for e in entries]}, sort_keys=True, indent=1) + "\n"
    lines = [f"# library: assocsqueeze {__version__}", f"# tolerance_profile: {profile}",
             "module, invariant, residual, bound, status"]
    for e in entries:
        lines.append(f"{e.module}, {e.invariant.replace(',', ';')}, {float(e.residual)!r}, {float(e.bound)!r}, "
                     f"{'pass' if e.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        result = args.func(args)
        if args.command == "verify":
            _emit(_verify_text(result, args.format, args.tolerance_profile), args.out)
            failed = [e for e in result if not e.passed]
            for e in failed:
                print(f"invariant failed: {e.module}: {e.invariant} ({e.residual:.3e} > {e.bound:.3e})",
                      file=sys.stderr)
            return EXIT_NUMERIC if failed else EXIT_OK
        _emit(result.render(args.format), args.out)
        return EXIT_OK
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (NumericError, SeriesError, RangeError, TruncationError, PoleError, ArithmeticError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
