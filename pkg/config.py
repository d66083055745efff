import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

BASE_DIR = Path(__file__).resolve().parent

# Parameter profile: "test-small" (toy group with trapdoor) or "production"
DEFAULT_PROFILE = os.getenv("EVERCRED_PROFILE", "test-small")

# Election defaults (overridable per scenario and on the command line)
DEFAULT_SEED = int(os.getenv("EVERCRED_SEED", "1"))
DEFAULT_VOTERS = int(os.getenv("EVERCRED_VOTERS", "10"))
DEFAULT_CHOICES = int(os.getenv("EVERCRED_CHOICES", "3"))

# Passcode delivery: entropy of tau and PBKDF2 work factors
PASSCODE_BYTES = int(os.getenv("EVERCRED_PASSCODE_BYTES", "15"))
PASSCODE_KDF_ITERATIONS = int(os.getenv("EVERCRED_PASSCODE_KDF_ITERATIONS", "20000"))
PASSWORD_HASH_ITERATIONS = int(os.getenv("EVERCRED_PASSWORD_HASH_ITERATIONS", "20000"))
PASSWORD_SALT_BYTES = 16

# Registrar: how many times t is resampled to keep references unique
MAX_REFERENCE_ATTEMPTS = int(os.getenv("EVERCRED_MAX_REFERENCE_ATTEMPTS", "64"))

# Voting server: open sessions kept before the oldest is dropped
MAX_OPEN_SESSIONS = int(os.getenv("EVERCRED_MAX_OPEN_SESSIONS", "1024"))

# Harness concurrency
MAX_WORKERS = int(os.getenv("EVERCRED_MAX_WORKERS", "4"))

# Logging
LOG_LEVEL = os.getenv("EVERCRED_LOG_LEVEL", "WARNING")

# Scenario definitions
SCENARIO_DIR = Path(os.getenv("EVERCRED_SCENARIO_DIR", str(BASE_DIR / "example_data" / "scenarios")))
