"""Exception hierarchy shared by all modules."""


class ApolloError(Exception):
    """Base class for every error raised by this package."""


class ResourceGuardError(ApolloError):
    """A step/size guard tripped; the caller should enlarge a limit."""


class NegativeRadicand(ApolloError):
    pass


class DepthOverflow(ResourceGuardError):
    pass


class NonPositiveInput(ApolloError):
    pass


class InfinitePoint(ApolloError):
    pass


class NotRealizable(ApolloError):
    pass


class NotTangent(ApolloError):
    pass


class LineUnsupported(ApolloError):
    pass


class UnknownGenerator(ApolloError):
    pass


class SingularMatrix(ApolloError):
    pass


class ClosureOverflow(ResourceGuardError):
    pass


class CanonicalizeOverflow(ResourceGuardError):
    pass


class GeometryInconsistent(ApolloError):
    pass


class PackingOverflow(ResourceGuardError):
    pass


class NonRationalInput(ApolloError):
    pass


class UnsupportedForm(ApolloError):
    pass


class Unreachable(ApolloError):
    pass
