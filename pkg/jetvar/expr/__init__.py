from jetvar.expr.atoms import (
    FUNCTIONS,
    Atom,
    BaseCoord,
    BoundaryJetVar,
    FnCall,
    InteriorJetVar,
    JetSpace,
    JetVar,
    World,
    atom_of,
)
from jetvar.expr.core import Expr, ensure_world, evaluate, normalize, partial
from jetvar.expr.forms import HorizontalForm
from jetvar.expr.grammar import parse
from jetvar.expr.multiindex import MultiIndex
from jetvar.expr.printer import to_text

__all__ = [
    "FUNCTIONS",
    "Atom",
    "BaseCoord",
    "BoundaryJetVar",
    "Expr",
    "FnCall",
    "HorizontalForm",
    "InteriorJetVar",
    "JetSpace",
    "JetVar",
    "MultiIndex",
    "World",
    "atom_of",
    "ensure_world",
    "evaluate",
    "normalize",
    "parse",
    "partial",
    "to_text",
]
