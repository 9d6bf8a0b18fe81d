# Copyright 2026 The spacesched Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Validates every --json report the CLI can emit against the schema."""

import json
import subprocess
import sys

import jsonschema

binary, schema_path, data = sys.argv[1:4]

with open(schema_path) as f:
    schema = json.load(f)
validator = jsonschema.Draft202012Validator(schema)

runs = [
    ["solve", f"{data}/three-process.json", "--json"],
    ["solve", f"{data}/three-process.json", "--json", "--schedule", "--explain"],
    ["solve", f"{data}/single.json", "--json", "--schedule", "--explain"],
    ["oracle", f"{data}/two-process.json", "--json"],
    ["constrained", f"{data}/prodcons-3.json", "--json"],
    ["constrained", f"{data}/partition-123.json", "--json"],
]

failed = 0
for args in runs:
    out = subprocess.run([binary, *args], capture_output=True, text=True, check=True).stdout
    errors = sorted(validator.iter_errors(json.loads(out)), key=str)
    status = "ok" if not errors else "INVALID"
    print(f"{status}: {' '.join(args)}")
    for e in errors:
        print(f"  {e.json_path}: {e.message}")
    failed += bool(errors)

sys.exit(1 if failed else 0)
