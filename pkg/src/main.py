"""Main entry point for smlab."""

import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from dotenv import load_dotenv

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

# Load environment variables from .env file
load_dotenv()


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    try:
        from src.cli import CLI
        from src.core.config import config
        from src.utils.logger import set_global_level

        if config.debug:
            set_global_level(logging.DEBUG)
        return CLI().run(argv)

    except ImportError as e:
        print(f"Error: Missing dependency - {e}", file=sys.stderr)
        print("Please install dependencies: pip install -r requirements.txt", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        print("\nInterrupted", file=sys.stderr)
        return 130


if __name__ == "__main__":
    sys.exit(main())
