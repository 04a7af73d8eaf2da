"""Batch command-line front end.

Every command writes one JSON document (``schema_version`` 1) or one CSV
table to stdout or ``--output``. Floats are printed with 17 significant
digits, so parsing the output recovers the computed doubles exactly.

Exit codes: 0 success, 2 validation failure, 3 documented exclusion
(``alpha = 1/2``, integer ``alpha`` for bounds), 4 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .asymptotics import (
    green_kernel,
    inverse_entry_asymptotic,
    trace_asymptotic,
)
from .bounds import c_alpha_bounds
from .errors import BreakdownError, ConvergenceError, DomainError, ExclusionError
from .spectral import (
    DEFAULT_KERNEL_RESOLUTIONS,
    DEFAULT_TOEPLITZ_SIZES,
    c_alpha_kernel,
    c_alpha_toeplitz,
)
from .symbols import SymbolSpec, TrigPoly, beta_coeffs, phi_coeff_table
from .toeplitz import gs_entry, gs_inverse, inverse_trace

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_EXCLUSION = 3
EXIT_NONCONVERGENCE = 4

COMMANDS = ("coeffs", "entry", "c-alpha", "bounds", "trace", "kernel-grid")


@dataclass
class RunConfig:
    """Validated arguments of a single command.

    Attributes:
        command: One of :data:`COMMANDS`.
        alpha: Singularity exponent.
        N: Matrix index (size ``N + 1``).
        Ns: Sizes for the Toeplitz route of ``c-alpha``.
        resolutions: Nystrom resolutions for the kernel route.
        f1: Regular part of the symbol.
        upto: Last coefficient index for ``coeffs``.
        k: Row index for ``entry``.
        l: Column index for ``entry``.
        m: Grid resolution for ``kernel-grid``.
        tol: Relative tolerance for eigen-iterations.
        output: Output path, ``None`` for stdout.
        fmt: ``json`` or ``csv``.
    """

    command: str
    alpha: float
    N: int | None = None
    Ns: tuple[int, ...] = DEFAULT_TOEPLITZ_SIZES
    resolutions: tuple[int, ...] = DEFAULT_KERNEL_RESOLUTIONS
    f1: TrigPoly = field(default_factory=TrigPoly.constant)
    upto: int | None = None
    k: int | None = None
    l: int | None = None
    m: int | None = None
    tol: float = 1e-13
    output: str | None = None
    fmt: str = "json"

    def validate(self) -> None:
        """Check the preconditions of :attr:`command` before any compute.

        Raises:
            DomainError: On a violated precondition.
            ExclusionError: On a documented mathematical exclusion.
        """
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if not math.isfinite(self.alpha):
            raise DomainError("alpha must be finite")
        if self.fmt not in ("json", "csv"):
            raise DomainError("format must be json or csv")
        if not self.tol > 0:
            raise DomainError("tol must be positive")
        need = {
            "coeffs": ("upto",),
            "entry": ("N", "k", "l"),
            "trace": ("N",),
            "kernel-grid": ("m",),
        }.get(self.command, ())
        for name in need:
            if getattr(self, name) is None:
                raise DomainError(f"--{name} is required for {self.command}")
        if self.upto is not None and self.upto < 0:
            raise DomainError("upto must be >= 0")
        if self.N is not None and self.N < 1:
            raise DomainError("N must be >= 1")
        if self.command == "entry":
            for name in ("k", "l"):
                v = getattr(self, name)
                if not 0 <= v <= self.N:
                    raise DomainError(f"{name} = {v} out of range 0..{self.N}")
        if self.command == "kernel-grid":
            if self.m < 1:
                raise DomainError("m must be >= 1")
            if self.alpha <= 0:
                raise DomainError("kernel-grid needs alpha > 0")
        if self.command == "c-alpha":
            if self.alpha == 0.5:
                raise ExclusionError(
                    "alpha = 1/2 has no c_alpha; lambda_min is bounded below by "
                    "bounds.half_case_lower(N) = pi / (N ln N)"
                )
            if self.alpha <= 0:
                raise DomainError("c-alpha needs alpha > 0")
            if len(self.Ns) < 2 or len(self.resolutions) < 2:
                raise DomainError("need at least two sizes and two resolutions")
        if self.command == "bounds":
            if self.alpha <= 0:
                raise DomainError("bounds need alpha > 0")
            if self.alpha == 0.5:
                raise ExclusionError("alpha = 1/2: see bounds.half_case_lower")
            if self.alpha == int(self.alpha):
                raise ExclusionError(
                    "integer alpha has no asserted interval; "
                    "see bounds.integer_reference_bounds"
                )
        if self.command == "trace" and self.alpha <= -0.5:
            raise DomainError("alpha must be > -1/2")

    def spec(self) -> SymbolSpec:
        return SymbolSpec(self.alpha, self.f1)


# ---------------------------------------------------------------- output


def _fmt_float(v: float) -> str:
    text = format(v, ".17g")
    # keep floats distinguishable from ints after parsing
    return text if any(c in text for c in ".en") else text + ".0"


def _encode(obj: Any) -> str:
    """JSON text with floats at 17 significant digits; non-finite -> null."""
    if isinstance(obj, (bool, type(None), str)):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return _fmt_float(v) if math.isfinite(v) else "null"
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {_encode(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _csv_cell(v: Any) -> str:
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return _fmt_float(v) if math.isfinite(v) else ""
    if v is None:
        return ""
    return str(v)


def _emit_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_csv_cell(v) for v in r])
    return buf.getvalue()


def _record_csv(record: dict) -> str:
    flat = {k: v for k, v in record.items() if not isinstance(v, (list, dict))}
    return _emit_csv(list(flat), [list(flat.values())])


def _split_complex(values: np.ndarray) -> tuple[list, list | None]:
    vals = np.asarray(values)
    if np.iscomplexobj(vals) and np.any(vals.imag != 0):
        return [float(v) for v in vals.real], [float(v) for v in vals.imag]
    return [float(v) for v in np.real(vals)], None


def _rel(a: float, b: float) -> float | None:
    if b is None or a is None or a == 0:
        return None
    return abs(a - b) / abs(a)


# ---------------------------------------------------------------- commands


def _header(cfg: RunConfig) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "command": cfg.command, "alpha": cfg.alpha}
    if cfg.f1.degree > 0 or cfg.f1.coefficient(0) != 1:
        out["f1"] = [[n, c.real, c.imag] for n, c in cfg.f1.coeffs.items() if n >= 0]
    return out


def cmd_coeffs(cfg: RunConfig) -> str:
    """``phi_hat(n)`` and ``beta_u`` for ``0 <= n, u <= upto``."""
    spec = cfg.spec()
    phi = phi_coeff_table(spec, cfg.upto)
    phi = phi.astype(complex if np.iscomplexobj(phi) else float)
    beta = beta_coeffs(spec, cfg.upto).values
    p_re, p_im = _split_complex(phi)
    b_re, b_im = _split_complex(beta)
    if cfg.fmt == "csv":
        header = ["index", "phi_hat"] + (["phi_hat_imag"] if p_im else [])
        header += ["beta_alpha"] + (["beta_alpha_imag"] if b_im else [])
        rows = []
        for i in range(cfg.upto + 1):
            r = [i, p_re[i]] + ([p_im[i]] if p_im else []) + [b_re[i]]
            rows.append(r + ([b_im[i]] if b_im else []))
        return _emit_csv(header, rows)
    out = _header(cfg)
    out["upto"] = cfg.upto
    out["phi_hat"] = [[i, v] for i, v in enumerate(p_re)] if p_im is None else [
        [i, a, b] for i, (a, b) in enumerate(zip(p_re, p_im))
    ]
    out["beta_alpha"] = [[i, v] for i, v in enumerate(b_re)] if b_im is None else [
        [i, a, b] for i, (a, b) in enumerate(zip(b_re, b_im))
    ]
    return _encode(out)


def cmd_entry(cfg: RunConfig) -> str:
    """Exact Gohberg-Semencul entry against the bulk kernel approximation."""
    spec = cfg.spec()
    exact = gs_entry(gs_inverse(spec, cfg.N), cfg.k, cfg.l)
    x, y = cfg.k / cfg.N, cfg.l / cfg.N
    asym = None
    if cfg.alpha > 0 and 0 < x < 1 and 0 < y < 1 and (x != y or cfg.alpha > 0.5):
        asym = inverse_entry_asymptotic(cfg.alpha, x, y, cfg.N, spec)
    exact_re = float(np.real(exact))
    out = _header(cfg)
    out.update({"N": cfg.N, "k": cfg.k, "l": cfg.l, "x": x, "y": y})
    out["exact"] = exact_re
    if np.iscomplexobj(exact) and np.imag(exact) != 0:
        out["exact_imag"] = float(np.imag(exact))
    out["asymptotic"] = asym
    out["rel_err"] = _rel(exact_re, asym) if asym is not None else None
    return _record_csv(out) if cfg.fmt == "csv" else _encode(out)


def cmd_c_alpha(cfg: RunConfig) -> str:
    """Both estimators of ``c_alpha`` with their relative disagreement."""
    kern = c_alpha_kernel(cfg.alpha, cfg.resolutions, cfg.tol)
    toep = c_alpha_toeplitz(cfg.alpha, cfg.Ns, cfg.spec(), cfg.tol)
    agreement = abs(kern.extrapolated - toep.extrapolated) / abs(kern.extrapolated)
    if cfg.fmt == "csv":
        rows = []
        for est in (kern, toep):
            for r, v in est.raw:
                rows.append([est.method, r, v, est.extrapolated, est.err_indicator])
        return _emit_csv(["method", "resolution", "raw", "extrapolated", "err_indicator"], rows)
    out = _header(cfg)
    out["kernel"] = kern.to_dict()
    out["toeplitz"] = toep.to_dict()
    out["agreement"] = agreement
    return _encode(out)


def cmd_bounds(cfg: RunConfig) -> str:
    """Interval for ``c_alpha`` in the regime of ``alpha``."""
    rep = c_alpha_bounds(cfg.alpha)
    out = _header(cfg)
    out.update(rep.to_dict())
    return _record_csv(out) if cfg.fmt == "csv" else _encode(out)


def cmd_trace(cfg: RunConfig) -> str:
    """Exact trace of the inverse against ``N^(2a)`` times the trace constant."""
    spec = cfg.spec()
    exact = inverse_trace(spec, cfg.N)
    asym = trace_asymptotic(cfg.alpha, cfg.N, spec) if cfg.alpha > 0.5 else None
    out = _header(cfg)
    out.update({"N": cfg.N, "exact": float(exact), "asymptotic": asym})
    out["rel_err"] = _rel(float(exact), asym) if asym is not None else None
    return _record_csv(out) if cfg.fmt == "csv" else _encode(out)


def cmd_kernel_grid(cfg: RunConfig) -> str:
    """``G_alpha`` on the midpoint grid ``x_i = (i + 1/2)/m``.

    Diagonal values are infinite for ``alpha <= 1/2`` and are emitted as
    null (JSON) or empty cells (CSV).
    """
    m = cfg.m
    x = (np.arange(m) + 0.5) / m
    grid = green_kernel(cfg.alpha, x[:, None], x[None, :])
    grid = 0.5 * (grid + grid.T)
    if cfg.fmt == "csv":
        rows = [[x[i], x[j], grid[i, j]] for i in range(m) for j in range(m)]
        return _emit_csv(["x", "y", "G"], rows)
    out = _header(cfg)
    out["m"] = m
    out["nodes"] = x.tolist()
    out["grid"] = grid.tolist()
    return _encode(out)


_DISPATCH = {
    "coeffs": cmd_coeffs,
    "entry": cmd_entry,
    "c-alpha": cmd_c_alpha,
    "bounds": cmd_bounds,
    "trace": cmd_trace,
    "kernel-grid": cmd_kernel_grid,
}


# ---------------------------------------------------------------- parsing


def parse_f1(text: str | None) -> TrigPoly:
    """Parse ``c0,c1,...`` or indexed ``n:c_n,...`` into a :class:`TrigPoly`.

    Values accept Python complex syntax (``1+0.5j``). The positional form
    fills negative indices by Hermitian symmetry; the indexed form is
    checked for it.
    """
    if text is None or not text.strip():
        return TrigPoly.constant()
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        if any(":" in p for p in parts):
            coeffs = {}
            for p in parts:
                n, v = p.split(":")
                coeffs[int(n)] = complex(v.replace(" ", ""))
            return TrigPoly(coeffs)
        return TrigPoly.from_nonneg([complex(p.replace(" ", "")) for p in parts])
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"malformed f1 {text!r}: {exc}") from exc


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(",") if v.strip())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fhtoeplitz",
        description="Toeplitz matrices with a Fisher-Hartwig zero at 1: "
        "coefficients, inverse entries, traces and extreme eigenvalue constants.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--alpha", type=float, required=True, help="singularity exponent")
        sp.add_argument(
            "--f1",
            default=None,
            help="regular part: 'c0,c1,...' or 'n:c_n,...' (default 1)",
        )
        sp.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
        sp.add_argument("--output", "-o", default=None, help="write here instead of stdout")

    sp = sub.add_parser("coeffs", help="Fourier and predictor coefficient tables")
    common(sp)
    sp.add_argument("--upto", type=int, required=True)

    sp = sub.add_parser("entry", help="exact vs asymptotic inverse entry")
    common(sp)
    sp.add_argument("--N", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)

    sp = sub.add_parser("c-alpha", help="kernel and Toeplitz estimates of c_alpha")
    common(sp)
    sp.add_argument("--Ns", type=_int_list, default=DEFAULT_TOEPLITZ_SIZES)
    sp.add_argument("--resolutions", type=_int_list, default=DEFAULT_KERNEL_RESOLUTIONS)
    sp.add_argument("--tol", type=float, default=1e-13)

    sp = sub.add_parser("bounds", help="closed-form interval for c_alpha")
    common(sp)

    sp = sub.add_parser("trace", help="trace of the inverse")
    common(sp)
    sp.add_argument("--N", type=int, required=True)

    sp = sub.add_parser("kernel-grid", help="m x m grid of G_alpha")
    common(sp)
    sp.add_argument("--m", type=int, required=True)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    kw = {
        k: getattr(ns, k)
        for k in ("N", "Ns", "resolutions", "upto", "k", "l", "m", "tol")
        if hasattr(ns, k)
    }
    return RunConfig(
        command=ns.command,
        alpha=ns.alpha,
        f1=parse_f1(ns.f1),
        output=ns.output,
        fmt=ns.fmt,
        **kw,
    )


def run(cfg: RunConfig) -> str:
    """Validate and execute ``cfg``; returns the rendered output."""
    cfg.validate()
    text = _DISPATCH[cfg.command](cfg)
    return text if text.endswith("\n") else text + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from_args(ns)
        text = run(cfg)
    except ExclusionError as exc:
        print(f"excluded: {exc}", file=sys.stderr)
        return EXIT_EXCLUSION
    except DomainError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ConvergenceError, BreakdownError) as exc:
        print(f"no convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
