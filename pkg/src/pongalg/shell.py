"""Command table over the verifiers.

Each ``_cmd_*`` takes a :class:`VerificationRequest` and the run
:class:`~pongalg.config.Settings` and returns a :class:`CommandResult`;
:func:`run` wraps the result in a :class:`~pongalg.reports.Report` and
consults the result cache.

Usage::

    from pongalg.shell import VerificationRequest, run

    report = run(VerificationRequest("dd-check", m=3, k=1))
    report.passed                     # True
    print(report.to_pretty())
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import shlex
from dataclasses import dataclass, field
from typing import Any, Callable

from .axioms import check_associativity, check_atomic_lengths, check_leibniz, check_square_zero, pure_generators
from .bordered import IdempotentState, clg_piece
from .checks import Verifier, check_rule
from .cobar import compare_orders, verify_quasi_iso
from .config import PHI_ORDERS, Settings
from .dd import all_atomics, delta1, verify_dd_relation, verify_product_trichotomy
from .hochschild import check_closure, check_k1_basis, check_omega_generator, check_vanishing, shh
from .homology import (
    check_degenerate,
    check_excessive_vanishing,
    check_hp_dimensions,
    check_model_comparison,
    check_q_special,
    check_q_trichotomy,
    compatible_weights,
    homology,
    map_pieces,
    weight_grid,
)
from .pieces import enumerate_basis, piece_complex
from .pong import omega, states
from .quotient import q_omega
from .reports import VERSION, Report
from .store import ResultCache, request_key
from .strands import WeightVector, local_multiplicities, parse_pong
from .tikz import build_diagram_data, render_tikz
from .transfer import AlgebraContext, parse_inputs, star_chain_solve, top_operation_text, transfer_mu, verify_perm_sum

logger = logging.getLogger(__name__)

ALGEBRAS = {"pong": "P", "quotient": "Q", "bordered": "C"}
FORMATS = ("json", "csv", "pretty")


@dataclass(frozen=True)
class VerificationRequest:
    command: str
    m: int = 3
    k: int = 1
    weight_cap: int = 2
    arity_cap: int | None = None
    algebra: str = "pong"
    x: tuple[int, ...] | None = None
    y: tuple[int, ...] | None = None
    w: tuple[str, ...] | None = None
    inputs: str | None = None
    generator: str | None = None
    samples: int = 1000
    seed: int = 0
    format: str = "json"
    use_cache: bool = True
    workers: int | None = None

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command: {self.command}")
        if self.m < 2:
            raise ValueError(f"m must be at least 2, got {self.m}")
        if not 0 <= self.k <= self.m - 1:
            raise ValueError(f"k must lie in 0..{self.m - 1}, got {self.k}")
        if self.weight_cap < 1:
            raise ValueError(f"weight cap must be positive, got {self.weight_cap}")
        if self.arity_cap is not None and self.arity_cap < 2:
            raise ValueError(f"arity cap must be at least 2, got {self.arity_cap}")
        if self.algebra not in ALGEBRAS:
            raise ValueError(f"algebra must be one of {sorted(ALGEBRAS)}, got {self.algebra!r}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")
        if self.samples < 0:
            raise ValueError(f"samples must be nonnegative, got {self.samples}")
        for name in ("x", "y"):
            state = getattr(self, name)
            if state is not None and (len(state) != self.k or any(not 1 <= e <= self.m - 1 for e in state)):
                raise ValueError(f"--{name} {state} is not an idempotent state of ({self.m},{self.k})")
        if self.w is not None and len(self.w) != self.m:
            raise ValueError(f"--w needs {self.m} entries, got {len(self.w)}")

    @property
    def weight(self) -> WeightVector | None:
        return None if self.w is None else WeightVector.of(*self.w)

    def as_dict(self) -> dict[str, Any]:
        """Fields that determine the result; output format, caching and workers do not."""
        out = dataclasses.asdict(self)
        for name in ("format", "use_cache", "workers"):
            out.pop(name)
        for name in ("x", "y", "w"):
            if out[name] is not None:
                out[name] = list(out[name])
        return out


@dataclass
class CommandResult:
    checks: dict[str, bool] = field(default_factory=dict)
    violations: list = field(default_factory=list)
    tables: dict[str, list[dict[str, Any]]] = field(default_factory=dict)

    def absorb(self, verifier: Verifier) -> CommandResult:
        self.violations.extend(verifier.validate())
        self.checks.update(verifier.outcomes)
        return self


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def _states_for(req: VerificationRequest, which: str) -> list[tuple[int, ...]]:
    chosen = getattr(req, which)
    return [chosen] if chosen is not None else states(req.m, req.k)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _cmd_dga_axioms(req: VerificationRequest, _settings: Settings) -> CommandResult:
    m, k = req.m, req.k
    cap = WeightVector.ones(m, req.weight_cap)
    verifier = (
        Verifier()
        .add(check_rule("d-squared", lambda: check_square_zero(m, k, cap)))
        .add(check_rule("leibniz", lambda: check_leibniz(m, k, cap)))
        .add(check_rule("associativity", lambda: check_associativity(m, k, cap, req.samples, req.seed)))
    )
    result = CommandResult().absorb(verifier)
    result.tables["generators"] = [{"m": m, "k": k, "cap": req.weight_cap, "count": len(pure_generators(m, k, cap))}]
    return result


def _cmd_atoms(req: VerificationRequest, _settings: Settings) -> CommandResult:
    m, k = req.m, req.k
    cap = WeightVector.ones(m, req.weight_cap)
    result = CommandResult().absorb(Verifier().add(check_rule("atomic-length", lambda: check_atomic_lengths(m, k, cap))))
    result.tables["atomics"] = [
        {"atomic": str(desc), "generator": str(g), "weight": local_multiplicities(g).to_json()}
        for desc, g in all_atomics(m, k)
    ]
    return result


def _piece_rows(key: tuple) -> tuple[list[dict[str, Any]], bool]:
    tag, m, k, x, y, doubled, multiplier = key
    w = WeightVector(doubled)
    if tag == "C":
        p = clg_piece(m, k, IdempotentState.of(m, x), IdempotentState.of(m, y), w)
        rows = [] if p is None else [{"degree": 0, "dimension": 1, "basis": 1}]
        return rows, True
    basis = enumerate_basis(tag, m, k, x, y, w, multiplier)
    if not len(basis):
        return [], True
    if not piece_complex(basis).check_square_zero():
        return [], False
    summary = homology(basis)
    sizes = basis.by_degree()
    rows = [
        {"degree": q, "dimension": summary.dimensions.get(q, 0), "basis": len(sizes.get(q, []))}
        for q in sorted(sizes)
    ]
    return rows, True


def _cmd_homology(req: VerificationRequest, settings: Settings) -> CommandResult:
    tag = ALGEBRAS[req.algebra]
    w = req.weight
    keys = []
    for x in _states_for(req, "x"):
        for y in _states_for(req, "y"):
            if w is not None:
                weights = [w]
            elif tag == "C":
                weights = weight_grid(req.m, req.weight_cap)
            else:
                weights = compatible_weights(req.m, x, y, req.weight_cap)
            keys += [(tag, req.m, req.k, x, y, v.doubled, settings.window_multiplier) for v in weights]
    results = map_pieces(_piece_rows, keys, settings.workers)
    rows: list[dict[str, Any]] = []
    square_zero = True
    for key, (piece_rows, ok) in results.items():
        _, _, _, x, y, doubled, _ = key
        square_zero = square_zero and ok
        for row in piece_rows:
            rows.append({"tag": tag, "x": list(x), "y": list(y), "w": WeightVector(doubled).to_json(), **row})
    return CommandResult(checks={"square-zero": square_zero}, tables={"homology": rows})


def _cmd_theorem_hq(req: VerificationRequest, settings: Settings) -> CommandResult:
    verifier = Verifier().add(
        check_rule("q-trichotomy", lambda: check_q_trichotomy(req.m, req.k, req.weight_cap, settings.workers))
    )
    return CommandResult().absorb(verifier)


def _cmd_theorem_hp(req: VerificationRequest, _settings: Settings) -> CommandResult:
    m, k, cap = req.m, req.k, req.weight_cap
    verifier = (
        Verifier()
        .add(check_rule("hp-dimensions", lambda: check_hp_dimensions(m, k, cap)))
        .add(check_rule("model-comparison", lambda: check_model_comparison(m, k, cap)))
        .add(check_rule("excessive-vanishing", lambda: check_excessive_vanishing(m, k, min(cap, 1))))
    )
    return CommandResult().absorb(verifier)


def _cmd_qm_special(req: VerificationRequest, _settings: Settings) -> CommandResult:
    _require(req.k == req.m - 1, f"qm-special needs k = m - 1, got k={req.k}, m={req.m}")
    return CommandResult().absorb(Verifier().add(check_rule("q-special", lambda: check_q_special(req.m, req.weight_cap))))


def _cmd_dd_check(req: VerificationRequest, _settings: Settings) -> CommandResult:
    m, k = req.m, req.k
    _require(0 < k < m, f"dd-check needs 0 < k < m, got k={k}, m={m}")
    verifier = (
        Verifier()
        .add(check_rule("dd-relation", lambda: verify_dd_relation(m, k)))
        .add(check_rule("product-trichotomy", lambda: verify_product_trichotomy(m, k)))
    )
    result = CommandResult().absorb(verifier)
    result.tables["delta1"] = [{"x": list(x), "terms": len(delta1(m, k, x))} for x in states(m, k)]
    return result


def _cmd_koszul(req: VerificationRequest, settings: Settings) -> CommandResult:
    m, k = req.m, req.k
    _require(0 < k < m, f"koszul needs 0 < k < m, got k={k}, m={m}")
    rows: list[dict[str, Any]] = []
    verifier = Verifier().add(
        check_rule(
            f"quasi-iso[{settings.phi_order}]",
            lambda: verify_quasi_iso(m, k, req.weight_cap, settings.phi_order, rows),
        )
    )
    result = CommandResult().absorb(verifier)
    result.tables["cobar"] = rows
    result.tables["phi_orders"] = compare_orders(m, k)
    return result


def _cmd_hochschild(req: VerificationRequest, _settings: Settings) -> CommandResult:
    m, k = req.m, req.k
    _require(0 < k < m - 1, f"hochschild needs 0 < k < m - 1, got k={k}, m={m}")
    verifier = (
        Verifier()
        .add(check_rule("vanishing", lambda: check_vanishing(m, k)))
        .add(check_rule("omega-generator", lambda: check_omega_generator(m, k)))
        .add(check_rule("closure", lambda: check_closure(m, k)))
    )
    if k == 1:
        verifier.add(check_rule("k1-basis", lambda: check_k1_basis(m)))
    result = CommandResult().absorb(verifier)
    top = 2 * m - 2 * k
    result.tables["shh"] = [
        shh(m, k, n, d).to_json() for d in (-1, -2) for n in range(0, top + 3) if shh(m, k, n, d).basis_size
    ]
    return result


def _cmd_mu(req: VerificationRequest, settings: Settings) -> CommandResult:
    m, k = req.m, req.k
    tag = ALGEBRAS[req.algebra]
    _require(tag in ("P", "Q"), "mu works over the pong algebra or its quotient")
    standard = top_operation_text(m, m - k - 1) if 0 < k < m - 1 else None
    text = req.inputs or standard
    _require(text is not None, f"--inputs is required for k={k}, m={m}")
    x = req.x if req.x is not None else tuple(range(m - k, m))
    cap = req.arity_cap or settings.arity_cap
    ctx = AlgebraContext(tag, m, k, arity_cap=cap, window_multiplier=settings.window_multiplier)
    cycles = parse_inputs(m, k, x, text, tag)
    classes = [ctx.class_of(a) for a in cycles]
    op = transfer_mu(ctx, classes)

    om = (q_omega(m, k) if tag == "Q" else omega(m, k)).restrict(left=x)
    target = ctx.class_of(om) if om else None
    is_omega = target is not None and not target.is_zero() and op.output == target
    result = CommandResult()
    result.checks["inputs-nonzero"] = all(not c.is_zero() for c in classes)
    if standard is not None and _normalize(text) == _normalize(standard):
        result.checks["omega"] = is_omega
        try:
            result.checks["star-chain"] = star_chain_solve(ctx, cycles).top == op.output
        except ValueError as exc:
            logger.info("star chain failed: %s", exc)
            result.checks["star-chain"] = False
    output = "Omega" if is_omega else ("0" if op.output.is_zero() else ctx.describe(op.output))
    result.tables["mu"] = [
        {
            "algebra": tag,
            "arity": op.arity,
            "inputs": text,
            "x": list(x),
            "output": output,
            "degree": op.output.degree,
            "weight": op.output.w.to_json(),
        }
    ]
    return result


def _normalize(text: str) -> str:
    return ",".join(tok.strip() for tok in text.split(","))


def _cmd_perm_sum(req: VerificationRequest, settings: Settings) -> CommandResult:
    return CommandResult().absorb(Verifier().add(check_rule("perm-sum", lambda: verify_perm_sum(req.m, settings.workers))))


def _cmd_degenerate(req: VerificationRequest, _settings: Settings) -> CommandResult:
    return CommandResult().absorb(Verifier().add(check_rule("degenerate", lambda: check_degenerate(req.m, req.weight_cap))))


def _cmd_diagram(req: VerificationRequest, _settings: Settings) -> CommandResult:
    _require(req.generator is not None, "diagram needs --generator, e.g. 'm=4 k=2 ((1,-2),(2,1))'")
    g = parse_pong(req.generator)
    data = build_diagram_data(g)
    row = {key: data[key] for key in ("m", "k", "left", "right", "weight", "cross")}
    row["generator"] = str(g)
    row["tikz"] = render_tikz(g)
    return CommandResult(checks={"diagram": True}, tables={"diagram": [row]})


def _cmd_all(req: VerificationRequest, settings: Settings) -> CommandResult:
    """Every command valid for ``(m, k)``, with checks prefixed by command name."""
    m, k = req.m, req.k
    names = ["dga-axioms", "atoms", "theorem-hq", "theorem-hp"]
    if 0 < k < m:
        names += ["dd-check", "koszul"]
    if 0 < k < m - 1:
        names += ["hochschild", "mu"]
    if k in (0, m - 1):
        names.append("degenerate")
    if k == m - 1:
        names += ["qm-special", "perm-sum"]
    combined = CommandResult()
    for name in names:
        sub = dataclasses.replace(req, command=name, weight_cap=1 if name == "koszul" else req.weight_cap)
        part = COMMANDS[name](sub, settings)
        combined.checks.update({f"{name}:{check}": ok for check, ok in part.checks.items()})
        combined.violations.extend(part.violations)
        combined.tables.update({f"{name}:{table}": rows for table, rows in part.tables.items()})
    return combined


COMMANDS: dict[str, Callable[[VerificationRequest, Settings], CommandResult]] = {
    "dga-axioms": _cmd_dga_axioms,
    "atoms": _cmd_atoms,
    "homology": _cmd_homology,
    "theorem-hq": _cmd_theorem_hq,
    "theorem-hp": _cmd_theorem_hp,
    "qm-special": _cmd_qm_special,
    "dd-check": _cmd_dd_check,
    "koszul": _cmd_koszul,
    "hochschild": _cmd_hochschild,
    "mu": _cmd_mu,
    "perm-sum": _cmd_perm_sum,
    "degenerate": _cmd_degenerate,
    "diagram": _cmd_diagram,
    "all": _cmd_all,
}

HELP = """Available commands:
  dga-axioms   d^2 = 0, Leibniz and associativity on P(m,k)
  atoms        atomic lengths and factorizations
  homology     dimension table of P, Q or C weight pieces
  theorem-hq   homology of the Q' cones is 0 or 1 dimensional, as predicted
  theorem-hp   H(P(m,k)) against C(m,m-k-1)[t] and the model complex
  qm-special   H(Q(m,m-1)) against F[X_1..X_m, Omega]/(X_i^2)
  dd-check     structure relation of the DD bimodule
  koszul       cobar of C(m,k) against Q(m,k)
  hochschild   small Hochschild model of (C(m,k), Q(m,k))
  mu           transferred operation on the given inputs
  perm-sum     permutation sum of mu_m on the X classes of H(Q(m,m-1))
  degenerate   H(P(m,0)) and H(P(m,m-1))
  diagram      TikZ picture of a pong generator
  all          every command valid for (m,k)"""


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _state_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(sorted(int(p) for p in text.split(",") if p.strip()))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _weight_arg(text: str) -> tuple[str, ...]:
    parts = tuple(p.strip() for p in text.split(","))
    try:
        WeightVector.of(*parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return parts


def build_parser(exit_on_error: bool = True) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pongalg",
        description="Exact GF(2) verification of pong algebras and their bordered counterparts.",
        epilog=HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        exit_on_error=exit_on_error,
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--m", type=int, default=3)
    parser.add_argument("--k", type=int, default=1)
    parser.add_argument("--weight-cap", dest="weight_cap", type=int, default=2)
    parser.add_argument("--arity-cap", dest="arity_cap", type=int)
    parser.add_argument("--algebra", choices=sorted(ALGEBRAS), default="pong")
    parser.add_argument("--x", type=_state_arg, help="left idempotent, e.g. 1,3")
    parser.add_argument("--y", type=_state_arg, help="right idempotent, e.g. 1,3")
    parser.add_argument("--w", type=_weight_arg, help="weight vector, e.g. 1,1,1/2,0")
    parser.add_argument("--inputs", help='operation inputs, e.g. "v1, L2, L3, v4, R3, R2"')
    parser.add_argument("--generator", help="pong generator, e.g. 'm=4 k=2 ((1,-2),(2,1))'")
    parser.add_argument("--samples", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=FORMATS, default="json")
    parser.add_argument("--no-cache", dest="use_cache", action="store_false")
    parser.add_argument("--workers", type=int)
    parser.add_argument("--phi-order", dest="phi_order", choices=PHI_ORDERS)
    parser.add_argument("--window-multiplier", dest="window_multiplier", type=int)
    parser.add_argument("--out", dest="out_path", help="write the report here instead of stdout")
    parser.add_argument("--tikz", dest="tikz_path", help="diagram: also write the TikZ picture here")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    return parser


def request_from_args(args: argparse.Namespace) -> VerificationRequest:
    return VerificationRequest(
        command=args.command,
        m=args.m,
        k=args.k,
        weight_cap=args.weight_cap,
        arity_cap=args.arity_cap,
        algebra=args.algebra,
        x=args.x,
        y=args.y,
        w=args.w,
        inputs=args.inputs,
        generator=args.generator,
        samples=args.samples,
        seed=args.seed,
        format=args.format,
        use_cache=args.use_cache,
        workers=args.workers,
    )


def settings_from_args(args: argparse.Namespace, base: Settings | None = None) -> Settings:
    base = base or Settings.from_env()
    changes = {
        name: getattr(args, name)
        for name in ("phi_order", "window_multiplier")
        if getattr(args, name) is not None
    }
    return base.replace(**changes) if changes else base


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------


def cache_request(req: VerificationRequest, settings: Settings) -> dict[str, Any]:
    out = req.as_dict()
    out["phi_order"] = settings.phi_order
    out["omega_side"] = settings.omega_side
    out["window_multiplier"] = settings.window_multiplier
    out["settings_arity_cap"] = settings.arity_cap
    return out


def run(req: VerificationRequest, settings: Settings | None = None, cache: ResultCache | None = None) -> Report:
    settings = settings or Settings.from_env()
    if req.workers is not None:
        settings = settings.replace(workers=req.workers)
    request = cache_request(req, settings)
    key = request_key(request)
    if cache is not None and req.use_cache:
        payload = cache.get(key)
        if payload is not None:
            logger.info("%s: cached report %s", req.command, key[:12])
            return Report.from_json(payload)

    result = COMMANDS[req.command](req, settings)
    report = Report(
        command=req.command,
        request=request,
        checks=result.checks,
        violations=result.violations,
        tables=result.tables,
        version=VERSION,
        request_hash=key,
    )
    logger.info("%s: %s", req.command, "pass" if report.passed else f"fail {report.failing_checks()}")
    if cache is not None and req.use_cache:
        cache.put(req.command, request, report.to_json())
    return report


class VerificationShell:
    """REPL-friendly front end: ``execute("dd-check --m 3 --k 1")``."""

    def __init__(self, settings: Settings | None = None, cache: ResultCache | None = None) -> None:
        self.settings = settings or Settings()
        self.cache = cache if cache is not None else ResultCache()

    def run(self, req: VerificationRequest) -> Report:
        return run(req, self.settings, self.cache)

    def execute(self, line: str) -> str:
        output, _exit_code = self.execute_with_status(line)
        return output

    def execute_with_status(self, line: str) -> tuple[str, int]:
        """Run ``;``, ``&&`` and ``||`` separated commands; exit 1 if the last one failed."""
        parser = build_parser(exit_on_error=False)
        last_output, last_success = "", True
        for op, argv in self._parse_line(line):
            if op == "&&" and not last_success:
                continue
            if op == "||" and last_success:
                continue
            if argv == ["help"]:
                last_output, last_success = HELP, True
                continue
            try:
                args = parser.parse_args(argv)
                report = run(request_from_args(args), settings_from_args(args, self.settings), self.cache)
                last_output, last_success = report.render(args.format), report.passed
            except (ValueError, KeyError, argparse.ArgumentError) as exc:
                last_output, last_success = str(exc), False
            except SystemExit:
                last_output, last_success = f"usage error: {' '.join(argv)}", False
        return last_output, 0 if last_success else 1

    @staticmethod
    def _tokenize(line: str) -> list[str]:
        lexer = shlex.shlex(line, posix=True, punctuation_chars="|&;")
        lexer.whitespace_split = True
        raw = list(lexer)
        merged: list[str] = []
        i = 0
        while i < len(raw):
            tok = raw[i]
            if tok in {"&", "|"} and i + 1 < len(raw) and raw[i + 1] == tok:
                merged.append(tok + tok)
                i += 2
                continue
            merged.append(tok)
            i += 1
        return merged

    def _parse_line(self, line: str) -> list[tuple[str | None, list[str]]]:
        clauses: list[tuple[str | None, list[str]]] = []
        current: list[str] = []
        next_op: str | None = None
        for tok in self._tokenize(line):
            if tok in {";", "&&", "||"}:
                if current:
                    clauses.append((next_op, current))
                current, next_op = [], tok
                continue
            current.append(tok)
        if current:
            clauses.append((next_op, current))
        return clauses
