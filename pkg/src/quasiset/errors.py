"""Exception hierarchy shared by the core, statistics and CLI layers."""


class QSetError(Exception):
    """Base class for every error raised by quasiset operations."""


class CyclicStructure(QSetError):
    pass


class NotAQSet(QSetError):
    pass


class UnknownSpecies(QSetError):
    pass


class NotMember(QSetError):
    pass


class AlreadyMember(QSetError):
    pass


class NotIndistinguishable(QSetError):
    pass


class EmptyCodomain(QSetError):
    pass


class NotDisjoint(QSetError):
    pass


class EmptyMember(QSetError):
    pass


class InvalidShape(QSetError):
    pass
