"""Exception types raised by rankshare."""


class RankShareError(ValueError):
    """Base class for domain errors (bad parameters, unparseable input)."""


class GuardExceeded(RankShareError):
    """The brute-force enumerator was asked to walk too many compositions."""


class MalformedCell(RankShareError):
    def __init__(self, row, col, text):
        self.row = row
        self.col = col
        self.text = text
        super().__init__(f"malformed cell at row {row}, column {col}: {text!r}")


class EmptyTable(RankShareError):
    pass


class DuplicateCategory(RankShareError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"duplicate category {name!r}")


class ZeroRowSum(RankShareError):
    def __init__(self, entity):
        self.entity = entity
        super().__init__(f"entity {entity!r} has a non-positive total")


class DegenerateVariance(RankShareError):
    pass
