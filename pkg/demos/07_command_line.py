"""
The command line
================

The same computations through ``specialconn`` (or ``python -m specialconn``).
Exit code 0 means ok, 1 a mathematical rejection with a witness, 2 a usage
or parse error.
"""

import tempfile
from pathlib import Path

from specialconn.cli import run

work = Path(tempfile.mkdtemp())
pair = str(work / "r4.json")

run(["catalog", "r4-so3-pair", "--out", pair])
run(["classify", pair])
run(["--format", "machine", "products", pair, "--out", str(work / "solutions.json")])

zero_assoc = str(work / "za.json")
run(["catalog", "zero-assoc", "--param", "n=3", "--param", "i1=1", "--param", "i2=3", "--out", zero_assoc])
code = run(["tkk", zero_assoc, "--special-product"])
print("exit code:", code)
