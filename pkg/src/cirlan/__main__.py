"""Allow running as `python -m cirlan`."""

from cirlan.main import main

main()
