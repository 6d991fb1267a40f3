"""Allow running as `python -m benchmarks`, same options as benchmarks.run."""

from .run import main

main()
