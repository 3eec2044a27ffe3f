#
#  MIT License
#
#  (C) Copyright 2026 Hewlett Packard Enterprise Development LP
#
#  Permission is hereby granted, free of charge, to any person obtaining a
#  copy of this software and associated documentation files (the "Software"),
#  to deal in the Software without restriction, including without limitation
#  the rights to use, copy, modify, merge, publish, distribute, sublicense,
#  and/or sell copies of the Software, and to permit persons to whom the
#  Software is furnished to do so, subject to the following conditions:
#
#  The above copyright notice and this permission notice shall be included
#  in all copies or substantial portions of the Software.
#
#  THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
#  IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
#  FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL
#  THE AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR
#  OTHER LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE,
#  ARISING FROM, OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR
#  OTHER DEALINGS IN THE SOFTWARE.
#

"""Randomized verification campaigns over theorem x function x map x dim cells"""

import logging
import math

from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import metadata

import lib.chains as chains
import lib.config as config
import lib.errors as errors
import lib.functions as functions
import lib.maps as maps
import lib.matrixio as matrixio
import lib.rng as rng


def tool_version() -> str:
    try:
        return metadata.version("loewner-lab")
    except metadata.PackageNotFoundError:
        return "0.1.0"


@dataclass(frozen=True)
class CampaignConfig:
    theorems: tuple
    functions: tuple
    dims: tuple
    m_range: tuple
    M_range: tuple
    instances_per_cell: int
    maps: tuple = ("none",)
    tol: float = 1e-9
    seed: int = 0
    workers: int = 1

    def to_json(self) -> dict:
        return {
            "theorems": list(self.theorems),
            "functions": list(self.functions),
            "maps": list(self.maps),
            "dims": list(self.dims),
            "m_range": list(self.m_range),
            "M_range": list(self.M_range),
            "instances_per_cell": self.instances_per_cell,
            "tol": self.tol,
            "seed": self.seed,
        }


_FIELDS = ("theorems", "functions", "maps", "dims", "m_range", "M_range", "instances_per_cell", "tol", "seed", "workers")


def _string_list(obj: dict, key: str, required: bool = True) -> tuple:
    if key not in obj:
        if required:
            raise errors.ConfigError(key, "missing")
        return None
    value = obj[key]
    if not isinstance(value, list) or not value:
        raise errors.ConfigError(key, "must be a non-empty list")
    for i, item in enumerate(value):
        if not isinstance(item, str):
            raise errors.ConfigError(f"{key}[{i}]", "must be a string")
    return tuple(value)


def _integer(obj: dict, key: str, default=None, minimum: int = None) -> int:
    value = obj.get(key, default)
    if value is None:
        raise errors.ConfigError(key, "missing")
    if isinstance(value, bool) or not isinstance(value, int):
        raise errors.ConfigError(key, f"must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise errors.ConfigError(key, f"must be at least {minimum}, got {value}")
    return value


def _interval(obj: dict, key: str) -> tuple:
    value = obj.get(key)
    if (not isinstance(value, list) or len(value) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v) for v in value)):
        raise errors.ConfigError(key, "must be a list of two finite reals")
    if value[0] > value[1]:
        raise errors.ConfigError(key, f"lower end {value[0]!r} exceeds upper end {value[1]!r}")
    return float(value[0]), float(value[1])


def parse_config(obj, seed: int = None, workers: int = None) -> CampaignConfig:

    """Validate a campaign config object; seed and workers override the file"""

    if not isinstance(obj, dict):
        raise errors.ConfigError("$", "config must be a JSON object")
    for key in obj:
        if key not in _FIELDS:
            raise errors.ConfigError(key, "unknown field")

    theorems = _string_list(obj, "theorems")
    for i, theorem in enumerate(theorems):
        try:
            chains.theorem_info(theorem)
        except errors.UnknownTheorem as err:
            raise errors.ConfigError(f"theorems[{i}]", str(err))
    theorems = tuple(chains.theorem_info(t).id for t in theorems)

    function_specs = _string_list(obj, "functions")
    for i, spec in enumerate(function_specs):
        try:
            functions.parse_function(spec)
        except errors.UnknownFunction as err:
            raise errors.ConfigError(f"functions[{i}]", str(err))

    map_specs = _string_list(obj, "maps", required=False) or ("none",)
    for i, spec in enumerate(map_specs):
        try:
            maps.map_shape(spec)
        except errors.UnknownKind as err:
            raise errors.ConfigError(f"maps[{i}]", str(err))

    dims = obj.get("dims")
    if not isinstance(dims, list) or not dims:
        raise errors.ConfigError("dims", "must be a non-empty list")
    for i, dim in enumerate(dims):
        if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
            raise errors.ConfigError(f"dims[{i}]", f"must be an integer >= 1, got {dim!r}")

    m_range = _interval(obj, "m_range")
    M_range = _interval(obj, "M_range")
    if not m_range[1] < M_range[0]:
        raise errors.ConfigError("M_range", "must lie strictly above m_range")

    tol = obj.get("tol", config.KV['DEFAULT_TOL'])
    if isinstance(tol, bool) or not isinstance(tol, (int, float)) or not tol > 0:
        raise errors.ConfigError("tol", f"must be a positive real, got {tol!r}")

    return CampaignConfig(
        theorems=theorems,
        functions=function_specs,
        dims=tuple(dims),
        m_range=m_range,
        M_range=M_range,
        instances_per_cell=_integer(obj, "instances_per_cell", minimum=1),
        maps=map_specs,
        tol=float(tol),
        seed=_integer({"seed": seed} if seed is not None else obj, "seed", 0),
        workers=_integer({"workers": workers} if workers is not None else obj, "workers", config.KV['WORKERS'], 1),
    )


def load_config(path: str, seed: int = None, workers: int = None) -> CampaignConfig:
    try:
        obj = matrixio.read_json(path)
    except ValueError as err:
        raise errors.ConfigError("$", f"{path} is not valid JSON ({err})")
    return parse_config(obj, seed, workers)


@dataclass(frozen=True)
class Cell:
    index: int
    theorem: str
    function: str
    map: str
    dim: int
    reason: str = None


def _skip_reason(theorem: str, function: str, map_spec: str, dim: int, cfg: CampaignConfig) -> str:

    info = chains.theorem_info(theorem)
    f = functions.parse_function(function)
    reason = chains.function_mismatch(theorem, f)
    if reason is not None:
        return reason
    if not f.domain.contains(cfg.m_range[0]):
        return f"m_range reaches outside the domain {f.domain} of {f.id}"
    if info.nonneg_A and cfg.m_range[0] <= 0:
        return f"{info.id} needs 0 <= A <= m, so m_range must be positive"
    if info.maps != "none":
        try:
            maps.parse_map(map_spec, dim, 0)
        except errors.LoewnerLabError as err:
            return f"map {map_spec} does not fit dimension {dim}: {err}"
    return None


def generate_cells(cfg: CampaignConfig) -> Iterable:

    """Yield every cell in a fixed order, skipped cells carrying a reason"""

    index = 0
    for theorem in cfg.theorems:
        shape = chains.theorem_info(theorem).maps
        specs = [s for s in cfg.maps if maps.map_shape(s) == shape] if shape != "none" else ["none"]
        for function in cfg.functions:
            for dim in cfg.dims:
                if not specs:
                    yield Cell(index, theorem, function, "none", dim, f"no {shape} map spec configured for {theorem}")
                    index += 1
                    continue
                for spec in specs:
                    yield Cell(index, theorem, function, spec, dim, _skip_reason(theorem, function, spec, dim, cfg))
                    index += 1


@dataclass
class CellResult:
    cell: Cell
    passed: int = 0
    failed: int = 0
    min_link_eigenvalue: float = None
    equality_links: list = field(default_factory=list)
    first_failure: dict = None

    def to_json(self) -> dict:
        return {
            "theorem": self.cell.theorem,
            "function": self.cell.function,
            "map": self.cell.map,
            "dim": self.cell.dim,
            "skipped": self.cell.reason is not None,
            "reason": self.cell.reason,
            "passed": self.passed,
            "failed": self.failed,
            "min_link_eigenvalue": self.min_link_eigenvalue,
            "equality_links": self.equality_links,
            "first_failure": self.first_failure,
        }


def _run_instance(cell: Cell, f, cfg: CampaignConfig, i: int) -> tuple:

    stream = rng.generator(cfg.seed, cell.index, i)
    m = float(stream.uniform(*cfg.m_range))
    M = float(stream.uniform(*cfg.M_range))
    instance, phi = chains.sample_instance(cell.theorem, f, cell.dim, m, M, cell.map, stream)
    chain = chains.build_chain(cell.theorem, instance, f, phi, cfg.tol)
    return instance, chains.evaluate_chain(chain, cfg.tol)


def run_cell(cell: Cell, cfg: CampaignConfig) -> CellResult:

    result = CellResult(cell)
    if cell.reason is not None:
        return result

    f = functions.parse_function(cell.function)
    info = chains.theorem_info(cell.theorem)
    result.equality_links = [0] * (info.terms - 1)

    for i in range(cfg.instances_per_cell):
        seed_path = [cfg.seed, cell.index, i]
        try:
            instance, report = _run_instance(cell, f, cfg, i)
        except errors.LoewnerLabError as err:
            logging.error(f"Unable to evaluate {cell.theorem} instance {seed_path}, received -> {str(err)}")
            result.failed += 1
            if result.first_failure is None:
                result.first_failure = {"seed_path": seed_path, "digest": None, "error": str(err)}
            continue

        low = report.min_link_eigenvalue
        if result.min_link_eigenvalue is None or low < result.min_link_eigenvalue:
            result.min_link_eigenvalue = low
        for j, link in enumerate(report.links):
            result.equality_links[j] += int(link.equality)

        if report.passed:
            result.passed += 1
        else:
            result.failed += 1
            if result.first_failure is None:
                result.first_failure = {"seed_path": seed_path, "digest": matrixio.instance_digest(instance),
                                        "error": None}

    logging.info(f"cell {cell.index} {cell.theorem} {cell.function} {cell.map} dim {cell.dim}: "
                 f"{result.passed} passed, {result.failed} failed")
    return result


def _run_cell_task(task: tuple) -> CellResult:
    cell, cfg = task
    return run_cell(cell, cfg)


@dataclass(frozen=True)
class CampaignReport:
    config: CampaignConfig
    cells: tuple
    version: str

    @property
    def verdict(self) -> str:
        return "fail" if any(result.failed for result in self.cells) else "pass"

    @property
    def exit_code(self) -> int:
        return 0 if self.verdict == "pass" else 1

    def to_json(self) -> dict:
        return {
            "config": self.config.to_json(),
            "cells": [result.to_json() for result in self.cells],
            "verdict": self.verdict,
            "seed": self.config.seed,
            "version": self.version,
        }


def run_campaign(cfg: CampaignConfig) -> CampaignReport:

    """Evaluate every cell; results are merged in cell order whatever the worker count"""

    cells = list(generate_cells(cfg))
    skipped = [cell for cell in cells if cell.reason is not None]
    for cell in skipped:
        logging.warning(f"skipping cell {cell.index} ({cell.theorem}, {cell.function}, {cell.map}, "
                        f"dim {cell.dim}): {cell.reason}")
    logging.info(f"campaign: {len(cells)} cells ({len(skipped)} skipped), "
                 f"{cfg.instances_per_cell} instances each, {cfg.workers} worker(s)")

    tasks = [(cell, cfg) for cell in cells]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_cell_task, tasks))
    else:
        results = [_run_cell_task(task) for task in tasks]

    report = CampaignReport(cfg, tuple(results), tool_version())
    logging.info(f"campaign verdict: {report.verdict}")
    return report


def emit_report(report: CampaignReport, path: str):
    matrixio.write_json(path, report.to_json())
