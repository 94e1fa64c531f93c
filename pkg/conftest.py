import sys
from pathlib import Path

# Modules are imported from the project root, as the CLI does
sys.path.insert(0, str(Path(__file__).parent))
