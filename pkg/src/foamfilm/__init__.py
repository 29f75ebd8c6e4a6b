"""Rewriting calculus for framed web tangles and the films between them.

Diagrams are sliced monoidal words (diagram.py) over a small cell vocabulary
(cells.py).  Planar moves live in webmoves.py, film generators and movies in
movies.py, the relation catalog in moviemoves.py, numeric invariants in
invariants.py, and the text format in textio.py.
"""

from .cells import Cell, Orientation, TwistKind, DOWN, UP
from .diagram import Diagram, Presentation, Slice, diagram, empty_diagram
from .errors import FoamfilmError, ParseError
from .normal import equal_up_to_sliding, normal_form
from .textio import parse_diagram, parse_movie, print_diagram, print_movie

__all__ = [
    "Cell",
    "Orientation",
    "TwistKind",
    "UP",
    "DOWN",
    "Diagram",
    "Presentation",
    "Slice",
    "diagram",
    "empty_diagram",
    "FoamfilmError",
    "ParseError",
    "normal_form",
    "equal_up_to_sliding",
    "parse_diagram",
    "parse_movie",
    "print_diagram",
    "print_movie",
]

__version__ = "0.1.0"
