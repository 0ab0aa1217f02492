from .util import __version__, ColorStripFormatter, RunNameFilter
from .gf2 import BitWord, BinMatrix
from .codes import LinearCode, CodeTower, hamming_7_4, make_tower, steane_tower
from .qsim import RegisterLayout, StateVector, DensityMatrix
from .css import CssCode, RecoveryRecord, encode, decode, recover
from .channels import PauliChannelSpec, GeneralDecoherence
