from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

from hadacodec import HadacodecError
from spectral import Role, SpectralCurve


class DatasetError(HadacodecError, ValueError):
    pass


class Split(str, Enum):
    train = "train"
    val = "val"
    test = "test"


class Origin(str, Enum):
    munsell = "munsell"
    munsell_standin = "munsell_standin"
    optimal = "optimal"
    smooth_saturated = "smooth_saturated"
    measured_lamp = "measured_lamp"
    broadband_synth = "broadband_synth"
    narrowband_synth = "narrowband_synth"
    daylight_synth = "daylight_synth"
    flipped = "flipped"


@dataclass(frozen=True)
class LabeledSpectrum:
    id: str
    curve: SpectralCurve
    origin: Origin
    split: Optional[Split] = None

    @property
    def kind(self) -> Role:
        return self.curve.role

    def with_split(self, split: Split) -> "LabeledSpectrum":
        return replace(self, split=split)
