import pathlib
import sys

# allow running the suite from a fresh checkout without installing
_SRC = pathlib.Path(__file__).resolve().parent.parent / "src"
if str(_SRC) not in sys.path:
    sys.path.insert(0, str(_SRC))
