from quadratic_twist_series.utils.parallel import ordered_map, resolve_workers, v_stripes
from quadratic_twist_series.utils.summation import CompensatedSum

__all__ = ["CompensatedSum", "ordered_map", "resolve_workers", "v_stripes"]
