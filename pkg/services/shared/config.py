import os
from pathlib import Path

from dotenv import load_dotenv

# Find .env file
current_file = Path(__file__).resolve()
project_root = current_file.parent.parent.parent
env_file = project_root / '.env'

ENV_LOADED = False
if env_file.exists():
    ENV_LOADED = load_dotenv(env_file)


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    return int(raw)


class Config:
    # Basis search for the JSJ classifier
    JSJ_SEARCH_DEPTH = _int_env("JSJ_SEARCH_DEPTH", 8)
    JSJ_NODE_CAP = _int_env("JSJ_NODE_CAP", 1_000_000)
    JSJ_LENGTH_FACTOR = _int_env("JSJ_LENGTH_FACTOR", 2)

    # Sampling suites
    DEFAULT_SEED = _int_env("DEFAULT_SEED", 7)
    DEFAULT_SAMPLES = _int_env("DEFAULT_SAMPLES", 100)
    IVANOV_MAX_LEN = _int_env("IVANOV_MAX_LEN", 12)
    CONJUGACY_MAX_LEN = _int_env("CONJUGACY_MAX_LEN", 6)

    # Makanin-Razborov factorizer
    MR_MAX_LEN = _int_env("MR_MAX_LEN", 4)
    MR_K_BOUND = _int_env("MR_K_BOUND", 8)
    MR_K_RANGE = _int_env("MR_K_RANGE", 5)

    LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING").upper()

    VERSION = "1.0.0"


# Create global config instance
config = Config()

# Debug info when run directly
if __name__ == "__main__":
    print("Configuration")
    print("=" * 30)
    print(f".env loaded: {ENV_LOADED} ({env_file})")
    for key in sorted(k for k in vars(Config) if k.isupper()):
        print(f"{key}: {getattr(config, key)}")
