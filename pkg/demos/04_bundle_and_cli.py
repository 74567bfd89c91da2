"""Round trip through the bundle format and drive the command line in-process."""
import json
import os
import tempfile

from simphopf import gen_zeta, parse_bundle, serialize_bundle
from simphopf.cli_io import bundle_from_map, main

print("== 1. serialize ========================================")
text = serialize_bundle(bundle_from_map(gen_zeta(3).map))
print("\n".join("   " + line for line in text.splitlines()[:8]))
print("   ...", len(text.splitlines()), "lines")

print("== 2. parse it back ====================================")
again = serialize_bundle(parse_bundle(text))
print("   identical after a round trip:", again == text)

print("== 3. the CLI ==========================================")
with tempfile.TemporaryDirectory() as tmp:
    path = os.path.join(tmp, "zeta3.bundle")
    print("   generate ->", main(["generate", "--family", "zeta", "--n", "3", "--out", path]))
    print("   mu:")
    main(["mu", path])
    print("   check-theorem exit code:", main(["check-theorem", path]))

    import contextlib
    import io
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        main(["check-theorem", path, "--json"])
    doc = json.loads(buf.getvalue())
    print("   report keys:", sorted(doc))
    print("   H =", doc["hopf"]["value"], " bound holds:", doc["bound"]["holds"])
