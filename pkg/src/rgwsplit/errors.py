"""Exception hierarchy. Every error carries a stable ``code`` used in CLI error objects."""


class RGWSplitError(Exception):
    code = "error"


class InvalidDegree(RGWSplitError, ValueError):
    code = "invalid-degree"


class InvalidPair(RGWSplitError, ValueError):
    code = "invalid-pair"


class InvalidProfile(RGWSplitError, ValueError):
    code = "invalid-profile"


class WrongTarget(RGWSplitError, ValueError):
    code = "wrong-target"


class IncompleteInput(RGWSplitError, KeyError):
    code = "incomplete-input"

    def __str__(self):
        return str(self.args[0]) if self.args else self.code


class InconsistentTable(RGWSplitError, ValueError):
    code = "inconsistent-table"


class EnumerationTooLarge(RGWSplitError):
    code = "enumeration-too-large"

    def __init__(self, estimated_work, budget):
        super().__init__(
            f"enumeration needs ~{estimated_work} tuple extensions, budget is {budget}; "
            "use the character formula instead"
        )
        self.estimated_work = estimated_work
        self.budget = budget


class WordMismatch(RGWSplitError, ValueError):
    code = "word-mismatch"

    def __init__(self, junction, left, right):
        super().__init__(f"chain breaks at junction {junction}: {left} != {right}")
        self.junction = junction
        self.left = left
        self.right = right


class OracleDisagreement(RGWSplitError):
    code = "oracle-disagreement"
