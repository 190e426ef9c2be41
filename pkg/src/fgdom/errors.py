"""Exception hierarchy.

Every error carries a short ``code`` string; the CLI reports it verbatim in
its JSON error payload.
"""


class FGDomError(Exception):
    code = "Error"

    def __init__(self, message="", **details):
        super().__init__(message or self.code)
        self.details = details

    def to_json(self):
        out = {"error": self.code, "message": str(self)}
        out.update({k: v for k, v in self.details.items()})
        return out


def _make(name, base=FGDomError):
    return type(name, (base,), {"code": name})


# surface
UnpairedSide = _make("UnpairedSide")
WrongPunctureCount = _make("WrongPunctureCount")
NonNegativeEuler = _make("NonNegativeEuler")
SelfGluedEdge = _make("SelfGluedEdge")
InadmissibleWeights = _make("InadmissibleWeights")

# moebius
DegenerateQuadruple = _make("DegenerateQuadruple")
NonpositiveHeight = _make("NonpositiveHeight")

# representation
NonGenericFraming = _make("NonGenericFraming")
NotCoaxial = _make("NotCoaxial")
DegenerateInput = _make("DegenerateInput")
InvalidRepresentation = _make("InvalidRepresentation")

# pleat
DegenerateCoordinate = _make("DegenerateCoordinate")

# curves
BudgetExceeded = _make("BudgetExceeded")
DisconnectedCurve = _make("DisconnectedCurve")

# domination
ZeroDenominator = _make("ZeroDenominator")
NotFilling = _make("NotFilling")
ZeroBend = _make("ZeroBend")

# strip
CuspExit = _make("CuspExit")
TangledPath = _make("TangledPath")
ArcsIntersect = _make("ArcsIntersect")

# io
SchemaError = _make("SchemaError")
