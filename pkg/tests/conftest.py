import sys
from pathlib import Path

# test-local helper modules (fixtures, vectors) import by plain name
sys.path.insert(0, str(Path(__file__).parent))
