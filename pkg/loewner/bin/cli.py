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

"""loewner-lab command line: verify, campaign and hunt"""

import argparse
import logging
import sys

import lib.campaign as campaign
import lib.chains as chains
import lib.config as config
import lib.errors as errors
import lib.functions as functions
import lib.hunt as hunt
import lib.maps as maps
import lib.matrixio as matrixio

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:

    parser = argparse.ArgumentParser(prog="loewner-lab",
                                     description="Loewner-order checks of refined operator inequalities for log-convex and superquadratic functions")
    parser.add_argument('-d', '--debug', action='store_true')
    parser.add_argument('-q', '--quiet', action='store_true')
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="evaluate one chain on an instance file")
    verify.add_argument('--theorem', required=True)
    verify.add_argument('--instance', required=True)
    verify.add_argument('--function', required=True)
    verify.add_argument('--map', default=None)
    verify.add_argument('--map-seed', type=int, default=0)
    verify.add_argument('--tol', type=float, default=None)

    run = sub.add_parser("campaign", help="run a randomized campaign from a config file")
    run.add_argument('--config', required=True)
    run.add_argument('--out', required=True)
    run.add_argument('--seed', type=int, default=None)
    run.add_argument('--workers', type=int, default=None)

    search = sub.add_parser("hunt", help="search for a counterexample with one hypothesis dropped")
    search.add_argument('--theorem', required=True)
    search.add_argument('--relax', required=True, choices=hunt.RELAXATIONS)
    search.add_argument('--function', required=True)
    search.add_argument('--map', default="none")
    search.add_argument('--dim', type=int, default=1)
    search.add_argument('--budget', type=int, default=1000)
    search.add_argument('--seed', type=int, default=0)
    search.add_argument('--tol', type=float, default=None)
    search.add_argument('--out', default=None)

    return parser


def setup_logging(args):

    log_format = "%(filename)s:%(funcName)s:%(lineno)s %(levelname)s %(asctime)s %(message)s"

    if args.debug:
        logging.basicConfig(
            format=log_format,
            datefmt="%Y-%m-%dT%H:%M:%S%z",
            level=logging.DEBUG)
    elif not args.quiet:
        logging.basicConfig(
            format=log_format,
            datefmt="%Y-%m-%dT%H:%M:%S%z",
            level=logging.INFO)

    for k, v in config.KV.items():
        logging.info(f"config K:{k}, V: {str(v)}")


def run_verify(args) -> int:

    try:
        instance, phi = matrixio.read_instance(args.instance)
    except Exception as err:
        logging.error(f"Unable to read instance {args.instance}, received -> {str(err)}")
        return EXIT_ERROR

    try:
        f = functions.parse_function(args.function)
        if args.map is not None:
            phi = maps.parse_map(args.map, instance.dim, args.map_seed)
        if chains.theorem_info(args.theorem).maps == "family" and not isinstance(phi, maps.MapFamily):
            phi = None
        chain = chains.build_chain(args.theorem, instance, f, phi, args.tol)
    except errors.LoewnerLabError as err:
        logging.error(f"Unable to build the {args.theorem} chain, received -> {str(err)}")
        return EXIT_ERROR

    report = chains.evaluate_chain(chain, args.tol, digest=matrixio.instance_digest(instance))
    sys.stdout.write(matrixio.dumps(report.to_json()))
    logging.info(f"{report.theorem}: {'pass' if report.passed else 'fail'}")
    return EXIT_PASS if report.passed else EXIT_FAIL


def run_campaign(args) -> int:

    try:
        cfg = campaign.load_config(args.config, args.seed, args.workers)
    except Exception as err:
        logging.error(f"Unable to load campaign config {args.config}, received -> {str(err)}")
        return EXIT_ERROR

    try:
        report = campaign.run_campaign(cfg)
    except Exception as err:
        logging.error(f"Unable to run the campaign, received -> {str(err)}")
        return EXIT_ERROR

    try:
        campaign.emit_report(report, args.out)
    except OSError as err:
        logging.error(f"Unable to write report {args.out}, received -> {str(err)}")
        return EXIT_ERROR

    return report.exit_code


def run_hunt(args) -> int:

    try:
        f = functions.parse_function(args.function)
        found = hunt.hunt_counterexample(args.theorem, args.relax, f, args.map, args.dim,
                                         args.budget, args.seed, args.tol)
    except errors.LoewnerLabError as err:
        logging.error(f"Unable to run the hunt, received -> {str(err)}")
        return EXIT_ERROR

    result = {
        "theorem": chains.theorem_info(args.theorem).id,
        "relaxation": args.relax,
        "function": f.id,
        "budget": args.budget,
        "seed": args.seed,
        "found": found is not None,
    }
    if found is not None:
        result["sample"] = found.sample
        result["instance"] = matrixio.instance_to_json(found.instance)
        if isinstance(found.maps, maps.PositiveUnitalMap):
            result["instance"]["map"] = matrixio.map_to_json(found.maps)
        result["digest"] = matrixio.instance_digest(found.instance)
        result["report"] = found.report.to_json()

    sys.stdout.write(matrixio.dumps(result))
    if args.out is not None:
        try:
            matrixio.write_json(args.out, result)
        except OSError as err:
            logging.error(f"Unable to write {args.out}, received -> {str(err)}")
            return EXIT_ERROR

    return EXIT_FAIL if found is not None else EXIT_PASS


def main(argv=None) -> int:

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return EXIT_PASS if err.code in (0, None) else EXIT_ERROR

    setup_logging(args)

    if args.command == "verify":
        return run_verify(args)
    if args.command == "campaign":
        return run_campaign(args)
    return run_hunt(args)


if __name__ == "__main__":
    sys.exit(main())
