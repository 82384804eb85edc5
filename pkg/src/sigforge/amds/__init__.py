from .emit import WHAT, Emitter, base_name, emit, sigma_telescope
from .interp import Carrier, Interp, Slot, ext_slot

__all__ = ["WHAT", "Emitter", "base_name", "emit", "sigma_telescope",
           "Carrier", "Interp", "Slot", "ext_slot"]
