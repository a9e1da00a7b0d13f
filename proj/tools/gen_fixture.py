#!/usr/bin/env python3
# Copyright 2026 The sdee Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates the bundled fixture corpus under data/fixture/.

The output is fully determined by SEED; re-running the script reproduces the
committed files byte for byte.
"""

import datetime as dt
import json
import os
import random

SEED = 20240601
TODAY = dt.date(2024, 6, 1)
OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data", "fixture")

ABSTRACT_GROUPS = [
    "Software library",
    "Software utilities & plugin",
    "Software tool",
    "Software metrics",
    "Software driving engine",
    "A software framework",
    "Software middleware",
    "Software client",
    "Software server",
    "Software driver",
    "Software file system",
]

# id, display name, abstract group, base effort (person-months), topic words
CATEGORIES = [
    ("compression", "Compression Libraries", "Software library", 12,
     "compression decompression compress decompress codec entropy huffman deflate zlib lz77 "
     "ratio stream block dictionary bitstream encoder decoder archive mesh pointcloud geometry "
     "quantization lossless lossy throughput"),
    ("cryptography", "Cryptography Libraries", "Software library", 30,
     "encryption decryption cipher aes rsa signature keys keyset hashing hmac tls certificate "
     "random nonce secure crypto primitives aead elliptic curve key rotation tamper "
     "authenticated misuse"),
    ("json", "JSON Libraries", "Software utilities & plugin", 6,
     "json parser parsing serialization deserialization schema document dom sax unicode "
     "objects arrays strings numbers pretty printing validation streaming reflection "
     "mapping bindings encoding yaml"),
    ("logging", "Logging Frameworks", "Software tool", 8,
     "logging logger log levels appenders sinks formatting rotation files console "
     "structured messages asynchronous backtrace debug warning error trace timestamps "
     "filters buffering syslog"),
    ("code-metrics", "Code Analysis", "Software metrics", 10,
     "metrics complexity cyclomatic coverage static analysis lint linter smells "
     "duplication maintainability report dashboard quality rules violations checks "
     "inspection churn sonar findings"),
    ("game-engine", "Game Engines", "Software driving engine", 80,
     "game engine rendering renderer physics sprites shaders scene editor animation "
     "collision audio input gameplay entities components vulkan opengl textures "
     "particles lighting cameras"),
    ("web-framework", "Web Frameworks", "A software framework", 45,
     "web framework routing routes controllers middleware templates views mvc "
     "sessions cookies forms orm migrations handlers request response rest "
     "dependency injection plugins"),
    ("message-queue", "Message Queues", "Software middleware", 40,
     "message queue broker messaging publish subscribe topics consumers producers "
     "delivery acknowledgement partitions brokers durable persistence replay offsets "
     "routing exchange backpressure cluster"),
    ("http-client", "HTTP Clients", "Software client", 15,
     "http client requests retries timeouts connection pooling headers redirects "
     "proxies cookies multipart uploads downloads interceptors async fetch "
     "compression keepalive urls tls"),
    ("web-server", "Web Servers", "Software server", 60,
     "server webserver http listener workers reverse proxy load balancing virtual hosts "
     "static files caching upstream tls termination connections epoll threads "
     "configuration modules access"),
    ("db-driver", "Database Drivers", "Software driver", 20,
     "database driver jdbc odbc connector sql queries statements prepared transactions "
     "cursor resultset connection pool postgres mysql sqlite protocol bindings "
     "batching types dialect"),
    ("dist-fs", "Distributed File Systems", "Software file system", 100,
     "filesystem distributed storage files directories metadata replication blocks "
     "chunks namenode datanode erasure coding posix mount volumes snapshots quotas "
     "consistency scalable petabyte"),
]

GENERIC = (
    "fast simple lightweight portable modern efficient robust flexible extensible "
    "api library project implementation support platform cross open source easy "
    "performance high production ready tested documented modular minimal").split()

TEMPLATES = [
    "{n} is a {g} {g} {t} {t} for {t} and {t}.",
    "It provides {t} {t} with {g} {t} support.",
    "The {t} {t} is designed for {g} {t} workloads.",
    "Features include {t}, {t}, {t} and {g} {t}.",
    "Use {n} to add {t} {t} to your {g} applications.",
    "Built around {t} {t} and {t} {t}, it stays {g} and {g}.",
    "{n} offers {g} {t} {t} on every {g} platform.",
    "Supports {t} {t}, {t} {t} and pluggable {t}.",
]

PREFIXES = ["fast", "tiny", "open", "hyper", "nano", "swift", "core", "micro", "neo", "zen",
            "pico", "turbo", "blue", "iron", "pure"]
OWNERS = ["acme", "northwind", "initech", "globex", "umbrella", "hooli", "stark", "wayne",
          "tyrell", "cyberdyne", "aperture", "soylent"]


def description(rng, name, words, n_sentences):
    topic = words.split()
    lines = [f"# {name}", "",
             f"[![build](https://ci.example.org/{name}/badge.svg)](https://ci.example.org/{name})", ""]
    for _ in range(n_sentences):
        tpl = rng.choice(TEMPLATES)
        out = tpl
        while "{t}" in out or "{g}" in out or "{n}" in out:
            out = out.replace("{t}", rng.choice(topic), 1)
            out = out.replace("{g}", rng.choice(GENERIC), 1)
            out = out.replace("{n}", name, 1)
        lines.append(out)
    lines += ["", "```sh", f"make install PREFIX=/usr/local/{name}", "```", "",
              f"See https://docs.example.org/{name} for details."]
    return "\n".join(lines) + "\n"


def iso(ts):
    return ts.strftime("%Y-%m-%dT%H:%M:%SZ")


def commit_log(rng, owner, repo, base_effort, start):
    """Returns (log text, releases list)."""
    devs = [f"{owner}-dev{i}@example.org" for i in range(10)]
    n_rel = rng.randint(3, 5)
    blocks = []
    releases = []
    cursor = start
    cid = 0
    for r in range(n_rel):
        eff = base_effort * rng.uniform(0.85, 1.15)
        max_d = max(1, int(eff * 30.44 / 45))
        d = min(rng.randint(2, 6), max_d)
        days = eff * 30.44 / d
        team = rng.sample(devs, d)
        n_commits = d * rng.randint(2, 4)
        offsets = sorted(rng.uniform(0.02, 0.98) * days for _ in range(n_commits - 1)) + [days]
        authors = team + [rng.choice(team) for _ in range(n_commits - d)]
        rng.shuffle(authors)
        if r == 0:
            offsets[0] = 0.0
        for off, who in zip(offsets, authors):
            ts = cursor + dt.timedelta(seconds=round(off * 86400))
            cid += 1
            sha = f"{rng.getrandbits(64):016x}{cid:04x}"
            lines = [f"C|{sha}|{who}|{iso(ts)}"]
            for _ in range(rng.randint(1, 3)):
                path = f"src/{rng.choice(['core', 'io', 'util', 'api'])}/{rng.choice(['a', 'b', 'c', 'd'])}{rng.randint(0, 20)}.c"
                lines.append(f"{rng.randint(0, 200)}\t{rng.randint(0, 120)}\t{path}")
            if rng.random() < 0.1:
                lines.append("-\t-\tassets/logo.png")
            blocks.append("\n".join(lines))
        last = cursor + dt.timedelta(seconds=round(days * 86400))
        rel_date = last + dt.timedelta(days=rng.randint(1, 4))
        releases.append({"release_no": f"v{r + 1}.0.0", "date": iso(rel_date),
                         "size_bytes": rng.randint(5_000_000, 90_000_000)})
        cursor = rel_date
    if rng.random() < 0.3:
        ts = cursor + dt.timedelta(days=rng.randint(2, 20))
        blocks.append(f"C|orphan{rng.getrandbits(32):08x}|{devs[0]}|{iso(ts)}\n3\t1\tREADME.md")
    return "\n\n".join(blocks) + "\n", releases


def main():
    rng = random.Random(SEED)
    os.makedirs(os.path.join(OUT, "descriptions"), exist_ok=True)
    os.makedirs(os.path.join(OUT, "logs"), exist_ok=True)
    os.makedirs(os.path.join(OUT, "queries"), exist_ok=True)

    taxonomy = {"abstract_groups": ABSTRACT_GROUPS,
                "categories": [{"id": c[0], "name": c[1], "abstract_group": c[2]} for c in CATEGORIES]}
    with open(os.path.join(OUT, "taxonomy.json"), "w") as f:
        json.dump(taxonomy, f, indent=2)
        f.write("\n")

    used = set()
    repo_lines = []
    for cat_id, _, _, base, words in CATEGORIES:
        for i in range(5):
            while True:
                owner = rng.choice(OWNERS)
                repo = f"{rng.choice(PREFIXES)}{cat_id.split('-')[0]}{rng.randint(1, 99)}"
                if (owner, repo) not in used:
                    used.add((owner, repo))
                    break
            key = f"{owner}__{repo}"
            with open(os.path.join(OUT, "descriptions", key + ".md"), "w") as f:
                f.write(description(rng, repo, words, rng.randint(6, 9)))
            start = dt.datetime(2018, 1, 1) + dt.timedelta(days=rng.randint(0, 500), hours=rng.randint(0, 23))
            log, releases = commit_log(rng, owner, repo, base * rng.uniform(0.85, 1.15), start)
            with open(os.path.join(OUT, "logs", key + ".log"), "w") as f:
                f.write(log)
            last_update = TODAY - dt.timedelta(days=rng.randint(1, 700))
            repo_lines.append({"owner": owner, "repo": repo,
                               "size_mb": round(rng.uniform(6, 400), 2),
                               "stars": rng.randint(520, 40000),
                               "last_update": last_update.isoformat(),
                               "categories": [cat_id],
                               "description_path": f"descriptions/{key}.md",
                               "releases": releases})
    with open(os.path.join(OUT, "repos.jsonl"), "w") as f:
        for r in repo_lines:
            f.write(json.dumps(r) + "\n")

    # Synthetic three-topic corpus for the embedding suite.
    with open(os.path.join(OUT, "topics3.jsonl"), "w") as f:
        for topic in ("compression", "cryptography", "web-server"):
            words = next(c[4] for c in CATEGORIES if c[0] == topic)
            for i in range(10):
                name = f"{topic.split('-')[0]}{i}"
                text = description(rng, name, words, 8)
                f.write(json.dumps({"id": f"{topic}-{i}", "topic": topic, "text": text}) + "\n")

    # Boundary records for the selection filter (today = 2024-06-01).
    boundary = []

    def b(name, size, stars, updated, keep, cat="compression"):
        boundary.append({"owner": "edge", "repo": name, "size_mb": size, "stars": stars,
                         "last_update": updated, "categories": [cat],
                         "description_path": "", "expect_keep": keep})

    b("size-exact-5", 5.0, 600, "2024-05-31", False)
    b("size-just-above", 5.01, 600, "2024-05-31", True)
    b("size-below", 4.99, 600, "2024-05-31", False)
    b("size-zero", 0.0, 9000, "2024-05-31", False)
    b("stars-exact-500", 10.0, 500, "2024-05-31", False)
    b("stars-501", 10.0, 501, "2024-05-31", True)
    b("stars-499", 10.0, 499, "2024-05-31", False)
    b("stars-zero", 10.0, 0, "2024-05-31", False)
    b("date-exact-3y", 10.0, 600, "2021-06-01", True)
    b("date-3y-plus-1d", 10.0, 600, "2021-05-31", False)
    b("date-3y-minus-1d", 10.0, 600, "2021-06-02", True)
    b("date-today", 10.0, 600, "2024-06-01", True)
    b("date-ancient", 10.0, 600, "2015-01-01", False)
    b("all-fail", 1.0, 10, "2010-01-01", False)
    b("all-pass-big", 900.0, 90000, "2024-01-01", True)
    b("size-and-stars-edge", 5.0, 500, "2024-01-01", False)
    b("other-category", 50.0, 1000, "2023-01-01", True, "json")
    b("other-category-old", 50.0, 1000, "2020-01-01", False, "json")
    b("fractional-size", 5.000001, 12000, "2022-02-02", True)
    b("future-update", 10.0, 600, "2024-06-02", True)
    with open(os.path.join(OUT, "filter_boundary.jsonl"), "w") as f:
        for r in boundary:
            f.write(json.dumps(r) + "\n")

    query = ("Geometry compression library for 3D meshes and point clouds. "
             "A lossless and lossy codec with entropy coding, quantization and a fast "
             "decoder that improves the compression ratio and throughput of mesh streams.")
    with open(os.path.join(OUT, "queries", "compression_library.txt"), "w") as f:
        f.write(query + "\n")
    with open(os.path.join(OUT, "queries", "compression_library.json"), "w") as f:
        json.dump({"title": "meshpack", "description": query, "languages": ["C++"],
                   "category": "Software library", "subcategory": "compression",
                   "operating_systems": ["Linux"],
                   "features": [{"name": "decoder", "description": "fast mesh decompression"}],
                   "k": 2}, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
