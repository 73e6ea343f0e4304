"""JSON job documents and the command-line surface.

A job document is ``{"format": "sftact-job/1", "command": ..., "input":
{...}, "parameters": {...}}``.  Permutations are written in 1-based cycle
notation like "(1 2)(3 4 5 6)"; group words are lists of
[generator, sign] pairs with 1-based generators; abstract groups may be
named (Zn, Sn, Dn, Q8) or given as an explicit multiplication table.
Reports serialize deterministically: stable key order, exact decimal
integers.

Exit codes: 0 success, 1 input errors, 2 mathematical precondition
failures, 3 cap or limit exhaustion.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass

from . import __version__
from .errors import (
    CapExceededError,
    InputError,
    LimitExceededError,
    PreconditionError,
)
from .matrices import (
    IntMatrix,
    RectMatrix,
    bowen_franks,
    char_poly_reciprocal,
    trace_of_power,
)
from .sft import SftPresentation
from .action import PermGroup, PermutationAction, group_from_generators
from .reduce import left_reduce, right_reduce
from .sse import (
    ElementarySse,
    SplitData,
    in_split,
    out_split,
    transport_certificate,
    verify_elementary_sse,
)
from .quotient import (
    DEFAULT_CAP,
    burnside_counts,
    classify_quotient,
    nonexpansive_witness,
    quotient_period_counts,
)
from .repshift import (
    FiniteGroupTable,
    HnnData,
    build_repshift,
    cyclic_group,
    dihedral_group,
    fibered_preset,
    flat_bundle_counts,
    quaternion_group,
    symmetric_group,
    tqft_matrix,
)

JOB_FORMAT = "sftact-job/1"
REPORT_FORMAT = "sftact-report/1"

COMMANDS = (
    "reduce",
    "invariants",
    "classify",
    "witness",
    "burnside",
    "quotient-counts",
    "verify-sse",
    "transport",
    "split",
    "repshift",
    "tqft",
    "bundle-counts",
)


@dataclass(frozen=True)
class JobSpec:
    command: str
    input: dict
    parameters: dict

    def document(self) -> dict:
        """Canonical job document (used for provenance echoes and round trips)."""
        return {
            "format": JOB_FORMAT,
            "command": self.command,
            "input": self.input,
            "parameters": self.parameters,
        }


@dataclass(frozen=True)
class Report:
    command: str
    input: dict
    result: dict

    def document(self) -> dict:
        return {
            "format": REPORT_FORMAT,
            "version": __version__,
            "command": self.command,
            "input": self.input,
            "result": self.result,
        }


# ---------------------------------------------------------------------------
# document validation helpers; errors always name the offending path

def _expect(cond, path, message):
    if not cond:
        raise InputError(f"{path}: {message}")


def _get_dict(doc, path):
    _expect(isinstance(doc, dict), path, "expected an object")
    return doc


def _get_int(value, path, minimum=None):
    _expect(isinstance(value, int) and not isinstance(value, bool), path, "expected an integer")
    if minimum is not None:
        _expect(value >= minimum, path, f"expected an integer >= {minimum}")
    return value


def parse_matrix(doc, path) -> IntMatrix:
    _expect(isinstance(doc, list) and doc, path, "expected a nonempty array of rows")
    for i, row in enumerate(doc):
        _expect(isinstance(row, list), f"{path}[{i}]", "expected an array")
        for j, x in enumerate(row):
            _get_int(x, f"{path}[{i}][{j}]")
            _expect(x >= 0, f"{path}[{i}][{j}]", f"matrix entries must be nonnegative, got {x}")
    try:
        return IntMatrix(tuple(tuple(row) for row in doc))
    except InputError as err:
        raise InputError(f"{path}: {err}") from err


def parse_signed_matrix(doc, path) -> RectMatrix:
    _expect(isinstance(doc, list) and doc, path, "expected a nonempty array of rows")
    for i, row in enumerate(doc):
        _expect(isinstance(row, list), f"{path}[{i}]", "expected an array")
        for j, x in enumerate(row):
            _get_int(x, f"{path}[{i}][{j}]")
    try:
        return RectMatrix(tuple(tuple(row) for row in doc), signed=True)
    except InputError as err:
        raise InputError(f"{path}: {err}") from err


def parse_rect(doc, path) -> RectMatrix:
    m = parse_signed_matrix(doc, path)
    _expect(all(x >= 0 for row in m.entries for x in row), path, "entries must be nonnegative")
    return RectMatrix(m.entries)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text, degree, path):
    """1-based cycle notation over 1..degree; cycles compose left to right."""
    _expect(isinstance(text, str), path, "expected a cycle-notation string")
    stripped = text.replace(" ", "").replace(",", "")
    _expect(
        stripped == "()" or _CYCLE_RE.sub("", text.strip()).strip() == "",
        path,
        f"malformed cycle notation {text!r}",
    )
    perm = list(range(degree))
    for cycle_text in _CYCLE_RE.findall(text):
        entries = [tok for tok in re.split(r"[\s,]+", cycle_text.strip()) if tok]
        if not entries:
            continue
        try:
            points = [int(tok) - 1 for tok in entries]
        except ValueError:
            raise InputError(f"{path}: non-integer entry in cycle {cycle_text!r}") from None
        for pt in points:
            _expect(0 <= pt < degree, path, f"cycle entry {pt + 1} out of range 1..{degree}")
        _expect(len(set(points)) == len(points), path, f"repeated entry in cycle {cycle_text!r}")
        cycle_map = {points[k]: points[(k + 1) % len(points)] for k in range(len(points))}
        perm = [cycle_map.get(perm[i], perm[i]) for i in range(degree)]
    return tuple(perm)


def cycles_of(perm) -> str:
    seen = set()
    parts = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            seen.add(i)
            continue
        cycle = [i]
        seen.add(i)
        j = perm[i]
        while j != i:
            cycle.append(j)
            seen.add(j)
            j = perm[j]
        parts.append("(" + " ".join(str(k + 1) for k in cycle) + ")")
    return "".join(parts) if parts else "()"


def parse_perm_group(doc, degree, path) -> PermGroup:
    doc = _get_dict(doc, path)
    gens_doc = doc.get("generators")
    _expect(isinstance(gens_doc, list), f"{path}.generators", "expected an array of cycle strings")
    limit = _get_int(doc.get("limit", 100000), f"{path}.limit", minimum=1)
    gens = [parse_cycles(g, degree, f"{path}.generators[{k}]") for k, g in enumerate(gens_doc)]
    return group_from_generators(degree, gens, limit)


_NAMED_GROUP_RE = re.compile(r"^([ZSD])(\d+)$")


def parse_abstract_group(doc, path) -> FiniteGroupTable:
    if isinstance(doc, str):
        if doc == "Q8":
            return quaternion_group()
        match = _NAMED_GROUP_RE.match(doc)
        _expect(match is not None, path, f"unknown group name {doc!r}")
        kind, n = match.group(1), int(match.group(2))
        _expect(n >= 1, path, "group parameter must be positive")
        if kind == "Z":
            return cyclic_group(n)
        if kind == "S":
            return symmetric_group(n)
        return dihedral_group(n)
    doc = _get_dict(doc, path)
    if "name" in doc:
        return parse_abstract_group(doc["name"], f"{path}.name")
    _expect("table" in doc, path, "expected a group name or an explicit table")
    table = doc["table"]
    _expect(isinstance(table, list) and table, f"{path}.table", "expected a nonempty array")
    names = doc.get("names", [str(k) for k in range(len(table))])
    try:
        return FiniteGroupTable(names=tuple(names), table=tuple(tuple(row) for row in table))
    except InputError as err:
        raise InputError(f"{path}.table: {err}") from err


def parse_word(doc, path):
    _expect(isinstance(doc, list), path, "expected an array of [generator, sign] pairs")
    word = []
    for k, pair in enumerate(doc):
        _expect(
            isinstance(pair, list) and len(pair) == 2,
            f"{path}[{k}]",
            "expected a [generator, sign] pair",
        )
        gen = _get_int(pair[0], f"{path}[{k}][0]", minimum=1)
        sign = _get_int(pair[1], f"{path}[{k}][1]")
        _expect(sign in (1, -1), f"{path}[{k}][1]", "sign must be 1 or -1")
        word.append((gen - 1, sign))
    return tuple(word)


def parse_hnn(doc, path) -> HnnData:
    doc = _get_dict(doc, path)
    if "preset" in doc:
        name = doc["preset"]
        _expect(isinstance(name, str), f"{path}.preset", "expected a preset name")
        return fibered_preset(name)
    for key in ("b_gens", "u_gens", "v_gens", "phi_images"):
        _expect(key in doc, path, f"missing field {key!r}")
    words = {}
    for key in ("b_relators", "u_gens", "u_relators", "v_gens", "v_relators", "phi_images"):
        value = doc.get(key, [])
        _expect(isinstance(value, list), f"{path}.{key}", "expected an array of words")
        words[key] = tuple(parse_word(w, f"{path}.{key}[{k}]") for k, w in enumerate(value))
    try:
        return HnnData(b_gens=_get_int(doc["b_gens"], f"{path}.b_gens", minimum=0), **words)
    except InputError as err:
        raise InputError(f"{path}: {err}") from err


def parse_certificate(doc, path) -> ElementarySse:
    doc = _get_dict(doc, path)
    for key in ("a", "b", "r", "s"):
        _expect(key in doc, path, f"missing field {key!r}")
    return ElementarySse(
        a=parse_matrix(doc["a"], f"{path}.a"),
        b=parse_matrix(doc["b"], f"{path}.b"),
        r=parse_rect(doc["r"], f"{path}.r"),
        s=parse_rect(doc["s"], f"{path}.s"),
    )


def _action_from_input(input_doc, path="input") -> PermutationAction:
    doc = _get_dict(input_doc, path)
    _expect("matrix" in doc, path, "missing field 'matrix'")
    matrix = parse_matrix(doc["matrix"], f"{path}.matrix")
    presentation = SftPresentation.from_matrix(matrix)
    _expect("group" in doc, path, "missing field 'group'")
    group = parse_perm_group(doc["group"], matrix.dim, f"{path}.group")
    return PermutationAction(presentation, group)


def parse_job(text: str) -> JobSpec:
    """Validate a job document; diagnostics name the offending path."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(f"malformed JSON document: {err}") from err
    doc = _get_dict(doc, "$")
    fmt = doc.get("format", JOB_FORMAT)
    _expect(fmt == JOB_FORMAT, "$.format", f"unsupported format {fmt!r}")
    _expect("command" in doc, "$", "missing command")
    command = doc["command"]
    _expect(command in COMMANDS, "$.command", f"unknown command {command!r}")
    input_doc = doc.get("input", {})
    _expect(isinstance(input_doc, dict), "$.input", "expected an object")
    params = doc.get("parameters", {})
    _expect(isinstance(params, dict), "$.parameters", "expected an object")
    for key in ("max_n", "cap", "limit", "m"):
        if key in params:
            _get_int(params[key], f"$.parameters.{key}", minimum=1)
    _validate_command_input(command, input_doc)
    return JobSpec(command=command, input=input_doc, parameters=params)


def _validate_command_input(command, input_doc):
    """Eager schema validation, so parse_job alone reports schema errors."""
    needs_action = command in ("reduce", "classify", "witness", "burnside", "quotient-counts", "split")
    if needs_action or command == "invariants":
        _expect("matrix" in input_doc, "$.input", "missing field 'matrix'")
        parse_matrix(input_doc["matrix"], "$.input.matrix")
    if needs_action:
        _expect("group" in input_doc, "$.input", "missing field 'group'")
    if command in ("repshift", "tqft", "bundle-counts"):
        _expect("hnn" in input_doc, "$.input", "missing field 'hnn'")
        parse_hnn(input_doc["hnn"], "$.input.hnn")
        _expect("group" in input_doc, "$.input", "missing field 'group'")
        parse_abstract_group(input_doc["group"], "$.input.group")
    if command == "transport":
        for key in ("certificate", "phi", "psi"):
            _expect(key in input_doc, "$.input", f"missing field {key!r}")
        parse_certificate(input_doc["certificate"], "$.input.certificate")
    if command == "verify-sse":
        if "chain" in input_doc:
            chain = input_doc["chain"]
            _expect(isinstance(chain, list) and chain, "$.input.chain", "expected a nonempty array")
            for k, link in enumerate(chain):
                parse_certificate(link, f"$.input.chain[{k}]")
        else:
            parse_certificate(input_doc, "$.input")


# ---------------------------------------------------------------------------
# command implementations

def _matrix_doc(m: IntMatrix):
    out = {"entries": [list(row) for row in m.entries]}
    if m.labels is not None:
        out["labels"] = list(m.labels)
    return out


def _poly_doc(p):
    return list(p.coefficients)


def _bf_doc(inv):
    return {"torsion": list(inv.torsion), "free_rank": inv.free_rank}


def _run_reduce(job):
    action = _action_from_input(job.input)
    right = right_reduce(action)
    left = left_reduce(action)
    orbits = [[s + 1 for s in orbit] for orbit in action.orbits.orbits]
    return {
        "orbits": orbits,
        "right": _matrix_doc(right.matrix),
        "left": _matrix_doc(left.matrix),
        "u_selector": [list(r) for r in right.u_selector.entries],
        "v_selector": [list(r) for r in right.v_selector.entries],
    }


def _run_invariants(job):
    doc = job.input
    matrix = parse_matrix(doc["matrix"], "input.matrix")
    result = {
        "char_poly_reciprocal": _poly_doc(char_poly_reciprocal(matrix)),
        "bowen_franks": _bf_doc(bowen_franks(matrix)),
    }
    if "group" in doc:
        action = _action_from_input(doc)
        for side, reduced in (("right", right_reduce(action)), ("left", left_reduce(action))):
            result[side] = {
                "matrix": _matrix_doc(reduced.matrix),
                "char_poly_reciprocal": _poly_doc(char_poly_reciprocal(reduced.matrix)),
                "bowen_franks": _bf_doc(bowen_franks(reduced.matrix)),
            }
    return result


def _run_classify(job):
    action = _action_from_input(job.input)
    verdict = classify_quotient(action)
    result = {
        "verdict": verdict.verdict,
        "kernel": [cycles_of(action.group.elements[g]) for g in verdict.kernel],
    }
    if verdict.witness is not None:
        g, cycle = verdict.witness
        result["witness"] = {
            "element": cycles_of(action.group.elements[g]),
            "cycle_states": [s + 1 for s in cycle.states],
        }
    return result


def _edge_doc(edges):
    return [[e[0] + 1, e[1] + 1, e[2]] for e in edges]


def _run_witness(job):
    action = _action_from_input(job.input)
    m = job.parameters.get("m", 1)
    verdict = classify_quotient(action)
    witness, x_window, y_window, zero = nonexpansive_witness(action, verdict, m)
    return {
        "m": m,
        "element": cycles_of(action.group.elements[witness.g]),
        "u": _edge_doc(witness.u),
        "v": _edge_doc(witness.v),
        "w": _edge_doc(witness.w),
        "w_prime": _edge_doc(witness.w_prime),
        "x_window": _edge_doc(x_window),
        "y_window": _edge_doc(y_window),
        "zero_offset": zero,
    }


def _run_burnside(job):
    action = _action_from_input(job.input)
    m = job.parameters.get("max_n", 6)
    report = burnside_counts(action, m)
    return {
        "counts": list(report.counts),
        "recurrence": _poly_doc(report.recurrence),
        "element_traces": [list(row) for row in report.element_traces],
    }


def _run_quotient_counts(job):
    action = _action_from_input(job.input)
    m = job.parameters.get("max_n", 6)
    cap = job.parameters.get("cap", DEFAULT_CAP)
    return {"counts": quotient_period_counts(action, m, cap)}


def _run_verify_sse(job):
    if "chain" in job.input:
        links = [
            parse_certificate(link, f"input.chain[{k}]")
            for k, link in enumerate(job.input["chain"])
        ]
        for e, f in zip(links, links[1:]):
            if e.b.entries != f.a.entries:
                raise InputError("input.chain: consecutive endpoints do not agree")
        results = [verify_elementary_sse(link) for link in links]
        return {"links": results, "valid": all(results)}
    cert = parse_certificate(job.input, "input")
    valid = verify_elementary_sse(cert)
    return {"links": [valid], "valid": valid}


def _run_transport(job):
    doc = job.input
    cert = parse_certificate(doc["certificate"], "input.certificate")
    phi = PermutationAction(
        SftPresentation.from_matrix(cert.a),
        parse_perm_group(doc.get("phi", {}), cert.a.dim, "input.phi"),
    )
    psi = PermutationAction(
        SftPresentation.from_matrix(cert.b),
        parse_perm_group(doc.get("psi", {}), cert.b.dim, "input.psi"),
    )
    out = transport_certificate(cert, phi, psi)
    return {
        "a_reduced": _matrix_doc(out.a),
        "b_reduced": _matrix_doc(out.b),
        "r": [list(row) for row in out.r.entries],
        "s": [list(row) for row in out.s.entries],
        "verified": verify_elementary_sse(out),
    }


def _run_split(job):
    action = _action_from_input(job.input)
    doc = job.input
    direction = doc.get("direction", "out")
    _expect(direction in ("out", "in"), "input.direction", "expected 'out' or 'in'")
    partition_doc = doc.get("partition")
    _expect(isinstance(partition_doc, list), "input.partition", "expected an array (one entry per state)")
    blocks = []
    for i, state_blocks in enumerate(partition_doc):
        path = f"input.partition[{i}]"
        _expect(isinstance(state_blocks, list) and state_blocks, path, "expected a nonempty array of blocks")
        state_out = []
        for k, block in enumerate(state_blocks):
            _expect(isinstance(block, list) and block, f"{path}[{k}]", "expected a nonempty array of states")
            edges = []
            for other in block:
                o = _get_int(other, f"{path}[{k}]", minimum=1) - 1
                edges.append((i, o, 0) if direction == "out" else (o, i, 0))
            state_out.append(tuple(edges))
        blocks.append(tuple(state_out))
    data = SplitData(direction, tuple(blocks))
    split_fn = out_split if direction == "out" else in_split
    new_action, cert = split_fn(action, data)
    return {
        "direction": direction,
        "matrix": _matrix_doc(new_action.matrix),
        "r": [list(row) for row in cert.r.entries],
        "s": [list(row) for row in cert.s.entries],
        "group_generators": [cycles_of(p) for p in new_action.group.elements[1:]],
        "verified": verify_elementary_sse(cert),
    }


def _repshift_from_input(job):
    hnn = parse_hnn(job.input["hnn"], "input.hnn")
    group = parse_abstract_group(job.input["group"], "input.group")
    limit = job.parameters.get("limit", 1000000)
    return build_repshift(hnn, group, limit)


def _run_repshift(job):
    shift = _repshift_from_input(job)
    m = job.parameters.get("max_n", 6)
    return {
        "states": list(shift.presentation.matrix.labels),
        "matrix": _matrix_doc(shift.presentation.matrix),
        "period_counts": [trace_of_power(shift.presentation.matrix, n) for n in range(1, m + 1)],
        "conjugation_order": shift.action.group.order,
    }


def _run_tqft(job):
    shift = _repshift_from_input(job)
    out = tqft_matrix(shift)
    return {
        "basis": list(out.basis),
        "matrix": _matrix_doc(out.reduced.matrix),
    }


def _run_bundle_counts(job):
    shift = _repshift_from_input(job)
    m = job.parameters.get("max_n", 6)
    report = flat_bundle_counts(shift, m)
    return {
        "counts": list(report.counts),
        "recurrence": _poly_doc(report.recurrence),
    }


_RUNNERS = {
    "reduce": _run_reduce,
    "invariants": _run_invariants,
    "classify": _run_classify,
    "witness": _run_witness,
    "burnside": _run_burnside,
    "quotient-counts": _run_quotient_counts,
    "verify-sse": _run_verify_sse,
    "transport": _run_transport,
    "split": _run_split,
    "repshift": _run_repshift,
    "tqft": _run_tqft,
    "bundle-counts": _run_bundle_counts,
}


def run_job(job: JobSpec) -> Report:
    result = _RUNNERS[job.command](job)
    return Report(command=job.command, input=job.document(), result=result)


# ---------------------------------------------------------------------------
# rendering

def _render_matrix_lines(doc, indent=""):
    entries = doc["entries"]
    width = max(len(str(x)) for row in entries for x in row)
    lines = []
    labels = doc.get("labels")
    label_w = max((len(l) for l in labels), default=0) if labels else 0
    for i, row in enumerate(entries):
        prefix = f"{labels[i]:>{label_w}} " if labels else ""
        lines.append(indent + prefix + "[" + " ".join(f"{x:>{width}}" for x in row) + "]")
    return lines


def bf_text(doc) -> str:
    parts = [f"Z/{d}" for d in doc["torsion"]]
    free = doc["free_rank"]
    if free == 1:
        parts.append("Z")
    elif free > 1:
        parts.append(f"Z^{free}")
    return " + ".join(parts) if parts else "0"


def poly_text(coeffs) -> str:
    if not coeffs:
        return "0"
    terms = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        elif k == 1:
            body = "t" if mag == 1 else f"{mag}t"
        else:
            body = f"t^{k}" if mag == 1 else f"{mag}t^{k}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms)


def _render_value(key, value, lines, indent=""):
    if isinstance(value, dict) and "entries" in value:
        lines.append(f"{indent}{key}:")
        lines.extend(_render_matrix_lines(value, indent + "  "))
    elif isinstance(value, dict) and set(value) == {"torsion", "free_rank"}:
        lines.append(f"{indent}BF group: {bf_text(value)}")
    elif isinstance(value, dict):
        lines.append(f"{indent}{key}:")
        for k in value:
            _render_value(k, value[k], lines, indent + "  ")
    elif key in ("recurrence", "char_poly_reciprocal"):
        lines.append(f"{indent}{key}: {poly_text(value)}")
    elif isinstance(value, list) and value and isinstance(value[0], list) and value and all(
        isinstance(x, int) for row in value for x in row if isinstance(row, list)
    ):
        lines.append(f"{indent}{key}:")
        lines.extend(_render_matrix_lines({"entries": value}, indent + "  "))
    else:
        lines.append(f"{indent}{key}: {value}")
    return lines


def emit_report(report: Report, format: str = "json") -> str:
    """Deterministic rendering of a report; byte-identical across runs."""
    if format == "json":
        return json.dumps(report.document(), sort_keys=True, indent=2) + "\n"
    if format != "text":
        raise InputError(f"unknown output format {format!r}")
    lines = [f"command: {report.command}"]
    for key in sorted(report.result):
        _render_value(key, report.result[key], lines)
    return "\n".join(lines) + "\n"


def emit_job(job: JobSpec) -> str:
    """Canonical serialization of a job document."""
    return json.dumps(job.document(), sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# entry point

def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="sftact",
        description="exact computations with finite group actions on shifts of finite type",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", default="-", help="job document path, or - for stdin")
    parser.add_argument("--format", default="json", choices=("json", "text"))
    parser.add_argument("--cap", type=int, default=None, help="enumeration cap override")
    parser.add_argument("--limit", type=int, default=None, help="closure limit override")
    parser.add_argument("--max-n", type=int, default=None, help="number of counts to compute")
    args = parser.parse_args(argv)

    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
    except OSError as err:
        print(f"error: cannot read input: {err}", file=sys.stderr)
        return 1

    try:
        doc = json.loads(text)
        if isinstance(doc, dict) and "command" not in doc:
            doc["command"] = args.command
        text = json.dumps(doc)
    except json.JSONDecodeError:
        pass  # parse_job reports the malformed document

    try:
        job = parse_job(text)
        if job.command != args.command:
            raise InputError(
                f"$.command: document says {job.command!r} but the subcommand is {args.command!r}"
            )
        params = dict(job.parameters)
        if args.cap is not None:
            params["cap"] = args.cap
        if args.limit is not None:
            params["limit"] = args.limit
        if args.max_n is not None:
            params["max_n"] = args.max_n
        job = JobSpec(command=job.command, input=job.input, parameters=params)
        report = run_job(job)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except PreconditionError as err:
        print(f"precondition failed: {err}", file=sys.stderr)
        return 2
    except (CapExceededError, LimitExceededError) as err:
        print(f"budget exhausted: {err}", file=sys.stderr)
        return 3
    sys.stdout.write(emit_report(report, args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
