from enum import Enum


class PictureKind(str, Enum):
    REGION_I = "region1"
    REGION_II = "region2"
    ADIABATIC = "adiabatic"


class Region(str, Enum):
    R1 = "I"
    R2 = "II"
    R3 = "III"


class DriveShape(str, Enum):
    COS = "cos"
    SIN = "sin"
    LINEAR = "linear"
    SECH = "sech"
    SAMPLED = "sampled"


class PeriodMode(str, Enum):
    HALF = "half"
    FULL = "full"


class MethodKind(str, Enum):
    MAGNUS = "magnus"
    ZMA = "zma"
    HEUN = "heun"
    ORACLE = "oracle"
    BESSEL = "bessel"


class Crossing(str, Enum):
    NONE = "none"
    EXACT_CENTER = "ExactCenter"
    EXACT_BOUNDARY = "ExactBoundary"
    AVOIDED = "Avoided"


class Smoothness(str, Enum):
    ANALYTIC = "analytic"
    SAMPLED = "sampled"


class ModelName(str, Enum):
    LZ = "lz"
    RABI = "rabi"


class Spacing(str, Enum):
    LIN = "lin"
    LOG = "log"


# su(2) basis, ordered (x, y, z)
PAULI_LABELS = ("x", "y", "z")
