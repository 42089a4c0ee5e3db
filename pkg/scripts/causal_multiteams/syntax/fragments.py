"""Fragment labels and the classifier."""

from enum import Enum

from causal_multiteams.errors import WrongFragmentError

from causal_multiteams.syntax.ast import CompAtom, Counterfactual, EvalAtom, Formula, Implies, walk


class FragmentLabel(Enum):
    P_MINUS = "P-"
    P = "P"
    P_SUPSET = "P(=>)"
    P_BOXRIGHT = "P([])"
    PCO = "PCO"
    EXTENDED = "EXTENDED"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, name: str) -> "FragmentLabel":
        aliases = {
            "p-": cls.P_MINUS, "p_minus": cls.P_MINUS, "p": cls.P,
            "p(=>)": cls.P_SUPSET, "p_supset": cls.P_SUPSET, "supset": cls.P_SUPSET,
            "p([])": cls.P_BOXRIGHT, "p_boxright": cls.P_BOXRIGHT, "boxright": cls.P_BOXRIGHT,
            "pco": cls.PCO, "extended": cls.EXTENDED,
        }
        try:
            return aliases[name.strip().lower()]
        except KeyError:
            raise ValueError(f"unknown fragment {name!r}")

    def within(self, other: "FragmentLabel") -> bool:
        """Inclusion order; P(=>) and P([]) are incomparable."""
        if self == other:
            return True
        return other in _ABOVE[self]


_ABOVE = {
    FragmentLabel.P_MINUS: {FragmentLabel.P, FragmentLabel.P_SUPSET, FragmentLabel.P_BOXRIGHT,
                            FragmentLabel.PCO, FragmentLabel.EXTENDED},
    FragmentLabel.P: {FragmentLabel.P_SUPSET, FragmentLabel.P_BOXRIGHT, FragmentLabel.PCO,
                      FragmentLabel.EXTENDED},
    FragmentLabel.P_SUPSET: {FragmentLabel.PCO, FragmentLabel.EXTENDED},
    FragmentLabel.P_BOXRIGHT: {FragmentLabel.PCO, FragmentLabel.EXTENDED},
    FragmentLabel.PCO: {FragmentLabel.EXTENDED},
    FragmentLabel.EXTENDED: set(),
}


def classify_fragment(f: Formula) -> FragmentLabel:
    """
    Least fragment containing f, looking at every node on both levels.

    Conditional atoms that lower to an observation (a condition on an
    evaluation atom, or the same condition on both sides of a comparison)
    count as an occurrence of =>.
    """
    supset = boxright = comparison = False
    for node in walk(f):
        if isinstance(node, CompAtom):
            if node.is_mixed:
                return FragmentLabel.EXTENDED
            comparison = True
            supset = supset or node.left.given is not None
        elif isinstance(node, EvalAtom):
            supset = supset or node.term.given is not None
        elif isinstance(node, Implies):
            supset = True
        elif isinstance(node, Counterfactual):
            boxright = True

    if supset and boxright:
        return FragmentLabel.PCO
    if supset:
        return FragmentLabel.P_SUPSET
    if boxright:
        return FragmentLabel.P_BOXRIGHT
    return FragmentLabel.P if comparison else FragmentLabel.P_MINUS


def require_fragment(f: Formula, bound: FragmentLabel, what: str) -> FragmentLabel:
    label = classify_fragment(f)
    if not label.within(bound):
        raise WrongFragmentError(f"{what} needs a {bound} formula, got {label}")
    return label
