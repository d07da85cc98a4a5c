"""Command line interface.

Every command reads JSON documents (``-`` means stdin) and writes one
canonical JSON document to stdout. Exit codes:

0  success
1  malformed document, invalid input or bad usage
2  a precondition of the requested construction fails
3  witness search exhausted without a result (inconclusive)
4  a resource cap was hit
"""

from __future__ import annotations

import sys

import click

from mvtopo import io
from mvtopo.constructors import (
    extend_cp,
    extend_weak,
    retract_boundary,
    retract_nearest,
    wedge_fns,
)
from mvtopo.errors import InvalidInputError, PreconditionError, ResourceLimitError
from mvtopo.multifun import DEFAULT_RMAX, analyze, compose
from mvtopo.oracle import CENSUS_CAP, census
from mvtopo.subdivision import subdivide

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PRECONDITION = 2
EXIT_INCONCLUSIVE = 3
EXIT_RESOURCE = 4

EXTEND_KINDS = {
    "weak": None,
    "cp-codomain": "fill-codomain",
    "cp-image": "fill-image",
    "cp-boundary": "fill-boundary-image",
}

_doc_file = click.File("r")
_rmax = click.option("--rmax", type=click.IntRange(min=1), default=DEFAULT_RMAX, show_default=True,
                     help="Largest subdivision level searched for a witness.")


def _emit(doc: dict) -> None:
    click.echo(io.dumps(doc), nl=False)


@click.group()
@click.version_option(package_name="mvtopo")
def cli():
    """Decide continuity properties of multivalued functions between digital images."""


@cli.command()
@click.argument("fn", type=_doc_file)
@_rmax
def check(fn, rmax):
    """Report weak, strong, connectivity preserving and continuity status of FN."""
    F = io.parse_multifn(fn.read())
    rep = analyze(F, rmax)
    _emit(io.report_to_doc(rep))
    return EXIT_OK


@cli.command()
@click.argument("fn", type=_doc_file)
@_rmax
def witness(fn, rmax):
    """Search for a continuity witness of FN at levels 1..RMAX.

    Prints a witness document, or a report with status not-found and exits 3.
    """
    F = io.parse_multifn(fn.read())
    rep = analyze(F, rmax)
    if rep.witness is not None:
        _emit(io.witness_to_doc(rep.witness, F))
        return EXIT_OK
    _emit(io.report_to_doc(rep))
    return EXIT_INCONCLUSIVE


@cli.command("subdivide")
@click.argument("image", type=_doc_file)
@click.option("-r", "scale", type=int, required=True, help="Subdivision level.")
def subdivide_cmd(image, scale):
    """Print S(IMAGE, r) as integer numerators."""
    X = io.parse_image(image.read())
    _emit(io.subdivided_to_doc(subdivide(X, scale)))
    return EXIT_OK


@cli.command()
@click.argument("kind", type=click.Choice(["nearest", "boundary"]))
@click.option("--image", "image", type=_doc_file, required=True)
@click.option("--subset", "subset", type=_doc_file, required=True,
              help="Image document, {\"points\": [...]} or a bare list of points.")
def retract(kind, image, subset):
    """Build a weakly continuous retraction of IMAGE onto SUBSET."""
    X = io.parse_image(image.read())
    A = io.parse_point_set(subset.read(), X.dimension)
    R = retract_nearest(X, A) if kind == "nearest" else retract_boundary(X, A)
    _emit(io.multifn_to_doc(R))
    return EXIT_OK


@cli.command()
@click.argument("kind", type=click.Choice(list(EXTEND_KINDS)))
@click.option("--fn", "fn", type=_doc_file, required=True)
@click.option("--into", "into", type=_doc_file, required=True, help="Image containing the domain of FN.")
def extend(kind, fn, into):
    """Extend FN over a larger image."""
    F = io.parse_multifn(fn.read())
    X = io.parse_image(into.read())
    G = extend_weak(F, X) if kind == "weak" else extend_cp(F, X, EXTEND_KINDS[kind])
    _emit(io.multifn_to_doc(G))
    return EXIT_OK


@cli.command("compose")
@click.argument("f", type=_doc_file)
@click.argument("g", type=_doc_file)
def compose_cmd(f, g):
    """Print G o F (F is applied first)."""
    F = io.parse_multifn(f.read())
    G = io.parse_multifn(g.read())
    _emit(io.multifn_to_doc(compose(F, G)))
    return EXIT_OK


@cli.command()
@click.argument("f", type=_doc_file)
@click.argument("g", type=_doc_file)
def wedge(f, g):
    """Print the wedge of F and G."""
    F = io.parse_multifn(f.read())
    G = io.parse_multifn(g.read())
    _emit(io.multifn_to_doc(wedge_fns(F, G)))
    return EXIT_OK


@cli.command("census")
@click.option("--dom", type=_doc_file, required=True)
@click.option("--cod", type=_doc_file, required=True)
@_rmax
@click.option("--cap", type=click.IntRange(min=1), default=CENSUS_CAP, show_default=True,
              help="Refuse to enumerate more functions than this.")
def census_cmd(dom, cod, rmax, cap):
    """Classify every multivalued function DOM -o COD."""
    X = io.parse_image(dom.read())
    Y = io.parse_image(cod.read())
    _emit(io.census_to_doc(census(X, Y, rmax, cap)))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="mvtopo", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_INVALID
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_INVALID
    except PreconditionError as exc:
        click.echo(f"precondition failed: {exc}", err=True)
        return EXIT_PRECONDITION
    except InvalidInputError as exc:
        click.echo(f"invalid input: {exc}", err=True)
        return EXIT_INVALID
    except ResourceLimitError as exc:
        click.echo(f"resource limit: {exc}", err=True)
        return EXIT_RESOURCE
    return rv if isinstance(rv, int) else EXIT_OK


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
