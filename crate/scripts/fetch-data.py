#!/usr/bin/env python3
"""Populate data/ with the emotion lexicon and the evaluation novels.

The lexicon is rebuilt in the NRC word-level format (word<TAB>category<TAB>flag)
from the JSON copy bundled in the `nrclex` wheel on PyPI. Novels are taken from
Project Gutenberg when it is reachable; Alice also has an offline fallback in
the Canterbury corpus copy that ships with the Brotli source distribution.

Usage: scripts/fetch-data.py [DATA_DIR]   (default: <repo>/data)
"""

import io
import json
import subprocess
import sys
import tarfile
import tempfile
import urllib.request
import zipfile
from pathlib import Path

CATEGORIES = [
    "anger", "anticipation", "disgust", "fear", "joy",
    "negative", "positive", "sadness", "surprise", "trust",
]

NOVELS = {
    "alice.txt": [11],
    "anne_of_green_gables.txt": [45],
    "peter_pan.txt": [16],
    "heart_of_darkness.txt": [219],
}

BROTLI_SDIST = "brotli==1.2.0"


def pip_download(spec, dest, binary):
    args = [sys.executable, "-m", "pip", "download", "--no-deps", "-q", "-d", str(dest), spec]
    args += ["--only-binary=:all:"] if binary else ["--no-binary=:all:"]
    subprocess.run(args, check=True)
    return next(Path(dest).iterdir())


def fetch_lexicon(out):
    with tempfile.TemporaryDirectory() as tmp:
        wheel = pip_download("nrclex==4.1.0", tmp, binary=True)
        with zipfile.ZipFile(wheel) as z:
            entries = json.loads(z.read("nrclex/data/nrc_en.json"))
    lines = [
        "# NRC Emotion Lexicon, word level, rebuilt from the nrclex 4.1.0 JSON copy.",
        "# Words with no association are absent from the source and therefore here.",
    ]
    for word in sorted(entries):
        cats = set(entries[word])
        for cat in CATEGORIES:
            lines.append(f"{word}\t{cat}\t{int(cat in cats)}")
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"lexicon: {len(entries)} words -> {out}")


def gutenberg(ebook):
    urls = [
        f"https://www.gutenberg.org/cache/epub/{ebook}/pg{ebook}.txt",
        f"https://www.gutenberg.org/files/{ebook}/{ebook}-0.txt",
    ]
    for url in urls:
        try:
            with urllib.request.urlopen(url, timeout=15) as r:
                return r.read()
        except Exception:
            continue
    return None


def alice_from_brotli():
    with tempfile.TemporaryDirectory() as tmp:
        sdist = pip_download(BROTLI_SDIST, tmp, binary=False)
        with tarfile.open(sdist) as t:
            member = next(m for m in t.getmembers() if m.name.endswith("testdata/alice29.txt"))
            return t.extractfile(member).read()


def main():
    root = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data"
    corpus = root / "corpus"
    corpus.mkdir(parents=True, exist_ok=True)

    lexicon = root / "NRC-Emotion-Lexicon-Wordlevel.txt"
    if not lexicon.exists():
        fetch_lexicon(lexicon)

    missing = []
    for name, ebooks in NOVELS.items():
        path = corpus / name
        if path.exists():
            continue
        body = None
        for ebook in ebooks:
            body = gutenberg(ebook)
            if body:
                break
        if body is None and name == "alice.txt":
            body = alice_from_brotli()
        if body is None:
            missing.append(name)
            continue
        path.write_bytes(body)
        print(f"novel: {path}")

    for name in missing:
        print(f"unavailable: {name} (Project Gutenberg unreachable)", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
