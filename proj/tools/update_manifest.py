#!/usr/bin/env python3
"""Rewrite data/MANIFEST.json with CRC-32 checksums of the data files."""
import json, pathlib, sys, zlib

root = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "data")
files = {}
for f in sorted(root.glob("*.json")):
    if f.name == "MANIFEST.json":
        continue
    files[f.name] = "%08x" % (zlib.crc32(f.read_bytes()) & 0xFFFFFFFF)
(root / "MANIFEST.json").write_text(json.dumps({"schema": "atlas.manifest/1", "files": files}, indent=2) + "\n")
print(json.dumps(files, indent=2))
