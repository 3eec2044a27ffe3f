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

"""Counterexample search with one hypothesis dropped"""

import logging

from dataclasses import dataclass

import lib.chains as chains
import lib.config as config
import lib.errors as errors
import lib.functions as functions
import lib.hermitian as hermitian
import lib.rng as rng

from lib.forge import SumRelation


RELAXATIONS = ("none",) + chains.CONDITION_RELAXATIONS + chains.EQUAL_SUM_RELAXATIONS


@dataclass(frozen=True)
class Counterexample:
    instance: object
    maps: object
    report: chains.ChainReport
    sample: int


def _f_order(relaxation: str, fm: float, fM: float) -> bool:

    """Whether f(m), f(M) fit the relaxation: the dropped f-hypothesis must fail"""

    if relaxation == "cond-i-f":
        return fm > fM
    if relaxation == "cond-ii-f":
        return fM > fm
    if relaxation == "cond-i-sum":
        return fm <= fM
    if relaxation == "cond-ii-sum":
        return fM <= fm
    return True


_RELATIONS = {
    "cond-i-f": SumRelation.SumLeq,
    "cond-i-sum": SumRelation.SumGeq,
    "cond-ii-f": SumRelation.SumGeq,
    "cond-ii-sum": SumRelation.SumLeq,
}


def _violates_only(relaxation: str, instance, f) -> bool:

    """Reject samples on which the relaxed hypothesis happens to hold anyway"""

    if relaxation == "none":
        return True
    quadruples = getattr(instance, "quadruples", (instance,))
    verdicts = [hermitian.loewner_leq(q.B + q.C, q.A + q.D, config.KV['EQUALITY_TOL']) for q in quadruples]
    if relaxation == "equal-sum":
        return any(v.relation is not hermitian.Relation.Equal for v in verdicts)

    fm, fM = f(instance.m), f(instance.M)
    verdict = verdicts[0]
    # the other condition must not rescue the instance
    if relaxation in ("cond-i-f", "cond-i-sum"):
        return not (verdict.geq and fM <= fm)
    return not (verdict.leq and fm <= fM)


def hunt_counterexample(theorem: str, relaxation: str, f: functions.FunctionDescriptor, map_spec: str = "none",
                        dim: int = 1, budget: int = 1000, seed: int = 0, tol: float = None,
                        m_range=(1.0, 2.0), width_range=(0.5, 1.5)) -> Counterexample:

    """Sample instances that violate only the named hypothesis and return the
    first one whose chain fails, or None when the budget runs out"""

    info = chains.theorem_info(theorem)
    if relaxation not in RELAXATIONS or (relaxation != "none" and relaxation not in info.relaxations):
        raise errors.UnknownRelaxation(f"{info.id} has no relaxation {relaxation!r}; "
                                       f"choose from {['none', *info.relaxations]}")
    if tol is None:
        tol = config.KV['DEFAULT_TOL']
    skip = frozenset() if relaxation == "none" else frozenset([relaxation])

    retries = config.KV['MAX_RETRIES']
    rejected = 0

    for sample in range(budget):
        stream = rng.generator(seed, sample)

        for _ in range(retries):
            m = float(stream.uniform(*m_range))
            M = m + float(stream.uniform(*width_range))
            if _f_order(relaxation, f(m), f(M)):
                break
        else:
            raise errors.ExhaustedRetries(f"{relaxation} cannot be violated with {f.id} on m in {m_range}")

        relation = _RELATIONS.get(relaxation)
        if relaxation == "equal-sum":
            relation = (SumRelation.SumLeq, SumRelation.SumGeq)[int(stream.integers(0, 2))]

        try:
            instance, phi = chains.sample_instance(info.id, f, dim, m, M, map_spec, stream, relation)
            if not _violates_only(relaxation, instance, f):
                rejected += 1
                continue
            chain = chains.build_chain(info.id, instance, f, phi, tol, skip)
        except (errors.HypothesisViolation, errors.ExhaustedRetries, errors.DomainViolation) as err:
            logging.debug(f"sample {sample}: skipped, received -> {str(err)}")
            rejected += 1
            continue

        report = chains.evaluate_chain(chain, tol, seed=[seed, sample])
        if not report.passed:
            logging.info(f"{info.id} with {relaxation} relaxed fails at sample {sample} "
                         f"(min link eigenvalue {report.min_link_eigenvalue:.6e})")
            return Counterexample(instance, phi, report, sample)

    logging.info(f"{info.id} with {relaxation} relaxed: no counterexample in {budget} samples ({rejected} rejected)")
    return None
