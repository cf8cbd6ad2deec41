"""Allow running as `python -m ldp_lab`."""

from ldp_lab.cli.main import app

app()
