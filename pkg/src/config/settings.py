import os

from dotenv import load_dotenv

from src.utils.errors import MssOutOfRangeError
from src.utils.logger import logger

# Load environment variables from .env file (if present)
load_dotenv()

SCHEME_NAMES = ("filter-based", "subtree-interval", "root-split")


class Settings:
    """Index, build and benchmark settings.

    Note: nothing is validated on import so that modules and tests can be
    imported with any environment. Call ``Settings.validate()`` at runtime.
    """

    # Index defaults
    MAX_MSS: int = 6
    DEFAULT_MSS: int = int(os.getenv("SI_DEFAULT_MSS", "3"))
    DEFAULT_SCHEME: str = os.getenv("SI_DEFAULT_SCHEME", "root-split")

    # Build tuning
    SORT_RUN_SIZE: int = int(os.getenv("SI_SORT_RUN_SIZE", "200000"))
    DIRECTORY_PAGE_ENTRIES: int = int(os.getenv("SI_DIRECTORY_PAGE_ENTRIES", "64"))

    # Benchmarks
    BENCH_WORKERS: int = int(os.getenv("SI_BENCH_WORKERS", "4"))
    BENCH_REPETITIONS: int = int(os.getenv("SI_BENCH_REPETITIONS", "5"))

    # Logging
    LOG_LEVEL: str = os.getenv("SI_LOG_LEVEL", "INFO")

    @classmethod
    def validate(cls) -> bool:
        """Validate every setting, raising ValueError that names all bad values."""
        problems: list[str] = []

        if not 1 <= cls.DEFAULT_MSS <= cls.MAX_MSS:
            problems.append(f"SI_DEFAULT_MSS={cls.DEFAULT_MSS} (expected 1..{cls.MAX_MSS})")
        if cls.DEFAULT_SCHEME not in SCHEME_NAMES:
            problems.append(f"SI_DEFAULT_SCHEME={cls.DEFAULT_SCHEME!r} (expected one of {', '.join(SCHEME_NAMES)})")
        if cls.SORT_RUN_SIZE <= 0:
            problems.append(f"SI_SORT_RUN_SIZE={cls.SORT_RUN_SIZE} (must be positive)")
        if cls.DIRECTORY_PAGE_ENTRIES <= 0:
            problems.append(f"SI_DIRECTORY_PAGE_ENTRIES={cls.DIRECTORY_PAGE_ENTRIES} (must be positive)")
        if cls.BENCH_WORKERS <= 0:
            problems.append(f"SI_BENCH_WORKERS={cls.BENCH_WORKERS} (must be positive)")
        if cls.BENCH_REPETITIONS <= 0:
            problems.append(f"SI_BENCH_REPETITIONS={cls.BENCH_REPETITIONS} (must be positive)")

        if problems:
            raise ValueError(f"Invalid settings: {'; '.join(problems)}")

        return True


def check_mss(mss: int) -> int:
    """Return ``mss`` unchanged, raising MssOutOfRangeError outside 1..MAX_MSS."""
    if not 1 <= mss <= Settings.MAX_MSS:
        raise MssOutOfRangeError(mss, Settings.MAX_MSS)
    return mss


logger.debug("Settings loaded (no validation performed on import). Call Settings.validate() at runtime if needed.")
