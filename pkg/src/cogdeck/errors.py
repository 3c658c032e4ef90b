"""Exception hierarchy shared by all modules."""


class CogError(Exception):
    """Base class for every error raised by the package."""


# groups
class GroupError(CogError):
    pass


class NotAssociative(CogError):
    def __init__(self, *witness):
        super().__init__(f"associativity fails at {witness}")
        self.witness = witness


class NoIdentity(GroupError):
    pass


class NoInverse(GroupError):
    def __init__(self, element):
        super().__init__(f"element {element} has no two-sided inverse")
        self.element = element


class NotASubgroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


class NotAHomomorphism(GroupError):
    def __init__(self, x, y):
        super().__init__(f"homomorphism property fails at ({x}, {y})")
        self.pair = (x, y)


# scwol
class ScwolError(CogError):
    pass


class LoopEdge(ScwolError):
    def __init__(self, edge):
        super().__init__(f"edge {edge!r} has i(a) = t(a)")
        self.edge = edge


class BadComposite(ScwolError):
    def __init__(self, a, b, why=""):
        super().__init__(f"composite of ({a!r}, {b!r}) is invalid {why}".rstrip())
        self.pair = (a, b)


class MissingComposite(ScwolError):
    def __init__(self, a, b):
        super().__init__(f"composable pair ({a!r}, {b!r}) has no composite")
        self.pair = (a, b)


class IncidenceBroken(ScwolError):
    def __init__(self, edge):
        super().__init__(f"morphism does not commute with i/t at edge {edge!r}")
        self.edge = edge


class CompositeBroken(ScwolError):
    def __init__(self, a, b):
        super().__init__(f"morphism does not preserve the composite of ({a!r}, {b!r})")
        self.pair = (a, b)


class StarNotBijective(ScwolError):
    def __init__(self, vertex):
        super().__init__(f"morphism is not bijective on the star of {vertex!r}")
        self.vertex = vertex


class Disconnected(ScwolError):
    def __init__(self, components):
        super().__init__(f"scwol has {len(components)} components")
        self.components = components


class UnknownVertex(ScwolError):
    pass


# complexes of groups and morphisms
class PsiNotInjective(CogError):
    def __init__(self, edge):
        super().__init__(f"psi of edge {edge!r} is not injective")
        self.edge = edge


class CocycleIFail(CogError):
    def __init__(self, a, b, g):
        super().__init__(f"c_g(a,b) psi_ab != psi_a psi_b at ({a!r}, {b!r}), element {g}")
        self.witness = (a, b, g)


class CocycleIIFail(CogError):
    def __init__(self, a, b, c):
        super().__init__(f"twist cocycle identity fails at ({a!r}, {b!r}, {c!r})")
        self.witness = (a, b, c)


class AxiomIFail(CogError):
    def __init__(self, edge):
        super().__init__(f"morphism axiom (i) fails at edge {edge!r}")
        self.edge = edge


class AxiomIIFail(CogError):
    def __init__(self, a, b):
        super().__init__(f"morphism axiom (ii) fails at ({a!r}, {b!r})")
        self.pair = (a, b)


class BadElement(CogError):
    pass


class DifferentBaseMorphism(CogError):
    pass


class NotACovering(CogError):
    pass


class NotSurjective(NotACovering):
    pass


class LocalNotInjective(NotACovering):
    def __init__(self, vertex):
        super().__init__(f"local map at {vertex!r} is not injective")
        self.vertex = vertex


class CosetMapNotInjective(NotACovering):
    def __init__(self, vertex, edge):
        super().__init__(f"coset map at ({vertex!r}, {edge!r}) is not injective")
        self.where = (vertex, edge)


class CosetMapNotSurjective(NotACovering):
    def __init__(self, vertex, edge):
        super().__init__(f"coset map at ({vertex!r}, {edge!r}) is not surjective")
        self.where = (vertex, edge)


# paths
class PathError(CogError):
    pass


class EndpointMismatch(PathError):
    pass


class PatternMismatch(PathError):
    pass


class NotInImage(PathError):
    pass


class NotComposable(PathError):
    pass


class WrongCog(PathError):
    pass


# fundamental groups, developments, deck groups
class Undecided(CogError):
    """Raised when a coset enumeration did not complete within its limit."""

    def __init__(self, limit):
        super().__init__(f"coset enumeration incomplete at limit {limit}")
        self.limit = limit


class NotDevelopable(CogError):
    def __init__(self, witnesses):
        super().__init__(f"local groups do not inject into pi1: {witnesses}")
        self.witnesses = witnesses


class NotInNormalizer(CogError):
    pass


class SearchSpaceTooLarge(CogError):
    def __init__(self, size):
        super().__init__(f"brute-force search exceeded bound after {size} candidates")
        self.size = size


# file format and command line
class FileSyntaxError(CogError):
    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationError(CogError):
    def __init__(self, name, cause):
        super().__init__(f"{name}: {cause}")
        self.name = name
        self.cause = cause


class DanglingReference(CogError):
    def __init__(self, name, line=None):
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"undeclared name {name!r}{where}")
        self.name = name
        self.line = line


class UnknownCommand(CogError):
    pass
