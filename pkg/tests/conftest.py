import sys
from pathlib import Path

# make the test-support modules (oracles, genutil) importable
sys.path.insert(0, str(Path(__file__).parent))
