from .settings import SCHEME_NAMES, Settings, check_mss

__all__ = ["SCHEME_NAMES", "Settings", "check_mss"]
