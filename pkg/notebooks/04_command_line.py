"""
The command-line front end
==========================

Every analysis is available as ``pdmod <command> <input>`` with text or
deterministic JSON output.  This script drives it in-process.
"""

# %%
import json

from pdmod.cli import main

SYSTEM = "n=2 params=a\ny[0,2]=0\ny[1,1]-a*y[0,1]=0\ny[2,0]-a*y[1,0]=0\n"

# %%
# The text report walks through every stage.
main(["full", SYSTEM])

# %%
# JSON output is sorted and stable, so reports can be diffed.
import io

buf = io.StringIO()
main(["generators", SYSTEM, "--set", "a=0", "--format", "json"], stdout=buf)
report = json.loads(buf.getvalue())
print("generators at a = 0:", report["generators"]["num_generators"])

# %%
# Errors map to exit codes: 2 for bad input, 3 for a failed stage.
print("exit code:", main(["generators", "n=1\ny[2]+y[0]=0\n"], stderr=io.StringIO()))
