"""Scenario files: schema validation, model dispatch, and result records.

A scenario is a JSON document naming one of the three models, its
parameters, and a list of state pairs to query.  Evaluation produces one
record per pair plus a header; records are plain dicts ready for JSON-lines
serialization.  All randomness is derived from the scenario seed plus the
pair index, so results do not depend on evaluation order or parallelism.
"""

from __future__ import annotations

import json
import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources

import jsonschema

from . import __version__
from .almost_m2 import FiniteDiracM2, InternalStateS2, ProductStateM2, causally_related_m2
from .moyal import (
    GeneralizedCoherentState,
    MoyalParams,
    coherent_causal,
    coherent_state,
    generalized_coherent_causal,
)
from .spacetime import EventPoint, ScalarField, lorentzian_distance
from .two_sheet import (
    FiniteDiracTwoSheet,
    SheetState,
    causally_related_sheets,
    causally_related_sheets_higgs,
)
from .verdict import CausalVerdict
from .verifier import assemble_jda, find_violation

__all__ = [
    "SCHEMA_ID",
    "ScenarioError",
    "Scenario",
    "load_scenario",
    "scenario_schema",
    "run_check",
    "run_verify",
    "records_to_lines",
]

SCHEMA_ID = "urn:nccausal:scenario:v1"

_DEFAULT_OPTIONS = {
    "tol": 1e-9,
    "seed": 0,
    "truncation": 32,
    "segments": 8,
    "budget": 200,
    "nodes": 16,
}


class ScenarioError(ValueError):
    """Scenario rejected; carries the JSON path of the offending node."""

    def __init__(self, message: str, json_path: str = "$"):
        super().__init__(f"{json_path}: {message}")
        self.json_path = json_path


def scenario_schema() -> dict:
    text = resources.files("nccausal.schemas").joinpath("scenario-v1.schema.json").read_text()
    return json.loads(text)


@dataclass
class Scenario:
    """Validated scenario: model name, parameters, pairs, numeric options."""

    model: str
    pairs: list
    options: dict
    dirac: dict | None = None
    higgs: dict | None = None
    params: dict | None = None
    raw: dict = field(default_factory=dict)


def load_scenario(source) -> Scenario:
    """Load and validate a scenario from a path, file object, or dict."""
    if isinstance(source, dict):
        doc = source
    elif hasattr(source, "read"):
        doc = json.load(source)
    else:
        try:
            with open(source, "r", encoding="utf-8") as handle:
                doc = json.load(handle)
        except OSError as exc:
            raise ScenarioError(f"cannot read scenario file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"invalid JSON: {exc}") from exc

    validator = jsonschema.Draft202012Validator(scenario_schema())
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        err = jsonschema.exceptions.best_match(errors)
        raise ScenarioError(err.message, err.json_path)

    if "A" in doc:
        warnings.warn(
            "scenario carries a vector-field entry 'A'; vector fields have no "
            "effect on the causal structure and the entry is ignored",
            stacklevel=2,
        )

    options = dict(_DEFAULT_OPTIONS)
    options.update(doc.get("options", {}))
    return Scenario(
        model=doc["model"],
        pairs=list(doc.get("pairs", [])),
        options=options,
        dirac=doc.get("dirac"),
        higgs=doc.get("higgs"),
        params=doc.get("params"),
        raw=doc,
    )


# ---------------------------------------------------------------------------
# state construction
# ---------------------------------------------------------------------------


def _m2_state(obj: dict) -> ProductStateM2:
    return ProductStateM2(
        base=EventPoint(float(obj["t"]), float(obj["x"])),
        internal=InternalStateS2(float(obj["latitude"]), float(obj.get("azimuth", 0.0))),
    )


def _sheet_state(obj: dict) -> SheetState:
    return SheetState(base=EventPoint(float(obj["t"]), float(obj["x"])), sheet=obj["sheet"])


def _moyal_kappa(obj: dict) -> complex:
    return complex(float(obj.get("kappa_re", 0.0)), float(obj.get("kappa_im", 0.0)))


def _moyal_level(obj: dict) -> int:
    return int(obj["level"]) if obj.get("kind") == "generalized" else 0


def _moyal_params(scenario: Scenario) -> MoyalParams:
    spec = scenario.params or {}
    theta = float(spec.get("theta", 1.0))
    truncation = int(spec.get("truncation", scenario.options["truncation"]))
    return MoyalParams(theta=theta, truncation=truncation)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def _pair_id(pair: dict, index: int) -> str:
    return str(pair.get("id", index))


def _provenance(options: dict, truncation: int | None) -> dict:
    return {
        "engine_version": __version__,
        "seed": options["seed"],
        "truncation": truncation,
    }


def _verdict_json(verdict) -> object:
    if isinstance(verdict, CausalVerdict):
        return verdict.status
    return bool(verdict)


def _eval_m2(scenario: Scenario, pair: dict, index: int) -> dict:
    dirac = FiniteDiracM2(float(scenario.dirac["d1"]), float(scenario.dirac["d2"]))
    a = _m2_state(pair["from"])
    b = _m2_state(pair["to"])
    tol = float(scenario.options["tol"])
    verdict = causally_related_m2(a, b, dirac, tol=tol)
    from .almost_m2 import azimuth_gap

    dist = lorentzian_distance(a.base, b.base)
    bound = azimuth_gap(a.internal, b.internal) / dirac.spread
    return {
        "kind": "result",
        "pair": _pair_id(pair, index),
        "verdict": verdict,
        "distance": dist,
        "bound": bound,
        "margin": None if dist is None else dist - bound,
        "provenance": _provenance(scenario.options, None),
    }


def _eval_two_sheet(scenario: Scenario, pair: dict, index: int, verbose: bool) -> dict:
    a = _sheet_state(pair["from"])
    b = _sheet_state(pair["to"])
    opts = scenario.options
    tol = float(opts["tol"])
    dist = lorentzian_distance(a.base, b.base)
    record = {
        "kind": "result",
        "pair": _pair_id(pair, index),
        "provenance": _provenance(opts, None),
        "distance": dist,
    }
    if scenario.higgs is not None:
        fieldspec = ScalarField.from_spec(scenario.higgs)
        verdict = causally_related_sheets_higgs(
            a,
            b,
            fieldspec,
            segments=int(opts["segments"]),
            budget=int(opts["budget"]),
            seed=int(opts["seed"]) + index,
            tol=tol,
            nodes=int(opts["nodes"]),
        )
        record["verdict"] = verdict
        record["bound"] = math.pi / 2.0
        record["margin"] = None
        if verbose and a.sheet != b.sheet and not verdict:
            # the optimizer only certifies lower bounds, so a cross-sheet
            # False is inconclusive in principle
            record["note"] = "not-causal-at-budget"
    else:
        m = complex(float(scenario.dirac.get("m_re", 0.0)), float(scenario.dirac.get("m_im", 0.0)))
        dirac = FiniteDiracTwoSheet(m)
        verdict = causally_related_sheets(a, b, dirac, tol=tol)
        record["verdict"] = verdict
        bound = math.pi / (2.0 * abs(m)) if a.sheet != b.sheet else 0.0
        record["bound"] = bound
        record["margin"] = None if dist is None else dist - bound
    return record


def _eval_moyal(scenario: Scenario, pair: dict, index: int) -> dict:
    params = _moyal_params(scenario)
    sa, sb = pair["from"], pair["to"]
    ka, kb = _moyal_kappa(sa), _moyal_kappa(sb)
    dk = kb - ka
    record = {
        "kind": "result",
        "pair": _pair_id(pair, index),
        "provenance": _provenance(scenario.options, params.truncation),
        "distance": dk.real,
    }
    if sa.get("kind") == "generalized" or sb.get("kind") == "generalized":
        ga = GeneralizedCoherentState(_moyal_level(sa), ka, params)
        gb = GeneralizedCoherentState(_moyal_level(sb), kb, params)
        verdict = generalized_coherent_causal(ga, gb)
        from .moyal import _min_jump_cost

        cost = _min_jump_cost(ga.level, gb.level, params.theta, max(ga.level, gb.level) + 4)
        record["verdict"] = verdict
        record["bound"] = cost + abs(dk.imag)
        record["margin"] = dk.real - record["bound"]
        if verdict.is_undetermined:
            record["reason"] = verdict.reason
    else:
        verdict = coherent_causal(ka, kb)
        record["verdict"] = verdict
        record["bound"] = abs(dk.imag)
        record["margin"] = dk.real - abs(dk.imag)
    return record


def _max_workers() -> int:
    raw = os.environ.get("NCC_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_pairs(fn, pairs):
    workers = _max_workers()
    if workers == 1 or len(pairs) <= 1:
        return [fn(i, p) for i, p in enumerate(pairs)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(len(pairs)), pairs))


def run_check(scenario: Scenario, verbose: bool = False) -> tuple[list[dict], bool]:
    """Evaluate every pair of a scenario; returns (records, any_undetermined)."""
    model = scenario.model
    if model == "m2":
        fn = lambda i, p: _eval_m2(scenario, p, i)
    elif model == "two_sheet":
        fn = lambda i, p: _eval_two_sheet(scenario, p, i, verbose)
    elif model == "moyal":
        fn = lambda i, p: _eval_moyal(scenario, p, i)
    else:  # pragma: no cover - schema forbids
        raise ScenarioError(f"unknown model {model!r}", "$.model")
    records = _map_pairs(fn, scenario.pairs)
    undetermined = any(
        isinstance(r["verdict"], CausalVerdict) and r["verdict"].is_undetermined
        for r in records
    )
    for r in records:
        r["verdict"] = _verdict_json(r["verdict"])
    return records, undetermined


def _state_vector(obj: dict, params: MoyalParams):
    if obj.get("kind") == "generalized":
        return GeneralizedCoherentState(_moyal_level(obj), _moyal_kappa(obj), params).to_vector()
    return coherent_state(_moyal_kappa(obj), params)


def run_verify(scenario: Scenario, verbose: bool = False) -> tuple[list[dict], bool]:
    """Closed-form vs operator-level comparison for a moyal scenario.

    Per pair: the closed-form verdict, whether the witness search refutes
    the causal order, and an agreement flag.  A closed-form non-causal pair
    with no witness found stays Undetermined since search exhaustion proves
    nothing.
    """
    if scenario.model != "moyal":
        raise ScenarioError("verify requires a moyal scenario", "$.model")
    params = _moyal_params(scenario)
    opts = scenario.options

    def one(index: int, pair: dict) -> dict:
        sa, sb = pair["from"], pair["to"]
        ka, kb = _moyal_kappa(sa), _moyal_kappa(sb)
        generalized = sa.get("kind") == "generalized" or sb.get("kind") == "generalized"
        if generalized:
            closed = generalized_coherent_causal(
                GeneralizedCoherentState(_moyal_level(sa), ka, params),
                GeneralizedCoherentState(_moyal_level(sb), kb, params),
            )
        else:
            closed = CausalVerdict.causal() if coherent_causal(ka, kb) else CausalVerdict.not_causal()
        witness = find_violation(
            _state_vector(sa, params),
            _state_vector(sb, params),
            budget=int(opts["budget"]),
            seed=int(opts["seed"]) + index,
            tol=float(opts["tol"]),
        )
        if closed.is_causal:
            combined = CausalVerdict.not_causal("operator witness contradicts closed form") if witness else closed
            agreement = witness is None
        elif closed.is_not_causal:
            combined = closed if witness else CausalVerdict.undetermined("no witness at budget")
            agreement = witness is not None
        else:
            combined = CausalVerdict.not_causal("operator witness") if witness else closed
            agreement = True
        record = {
            "kind": "result",
            "pair": _pair_id(pair, index),
            "closed_form": _verdict_json(closed if generalized else closed.is_causal),
            "witness_found": witness is not None,
            "margin": witness.margin if witness else None,
            "agreement": agreement,
            "verdict": combined.status,
            "provenance": _provenance(opts, params.truncation),
        }
        if combined.reason:
            record["reason"] = combined.reason
        if verbose and witness is not None:
            op = assemble_jda(witness.element)
            import numpy as np

            record["witness"] = {
                "coeffs_re": witness.element.coeffs.real.tolist(),
                "coeffs_im": witness.element.coeffs.imag.tolist(),
                "spectrum": np.linalg.eigvalsh(op.matrix).tolist(),
            }
        return record

    records = _map_pairs(one, scenario.pairs)
    undetermined = any(r["verdict"] == "Undetermined" for r in records)
    return records, undetermined


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def records_to_lines(scenario: Scenario, records: list[dict], timestamp: str) -> list[str]:
    """JSON lines: one header (the only line carrying the timestamp), then results."""
    truncation = None
    if scenario.model == "moyal":
        truncation = _moyal_params(scenario).truncation
    header = {
        "kind": "header",
        "engine": "nccausal",
        "version": __version__,
        "model": scenario.model,
        "seed": scenario.options["seed"],
        "truncation": truncation,
        "timestamp": timestamp,
    }
    lines = [json.dumps(header, sort_keys=True)]
    lines += [json.dumps(r, sort_keys=True) for r in records]
    return lines
