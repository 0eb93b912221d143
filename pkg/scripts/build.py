#!/usr/bin/env python3
"""
Build the one-file mocr-solver executable.

Steps, in order:
- optional version bump in src/version.py, rolling the CHANGELOG
  "Unreleased" notes into a dated section for the new version
- fast test run (pytest -m "not slow"), unless --skip-tests
- PyInstaller --onefile console build into dist/
- smoke run of the built executable with --version

Usage:
    python scripts/build.py                  # Test and build the current version
    python scripts/build.py --bump minor     # Bump, test and build
    python scripts/build.py --bump patch --no-build
"""

import argparse
import re
import shutil
import subprocess
import sys
from datetime import date
from pathlib import Path
from typing import NamedTuple, Optional

PROJECT_ROOT = Path(__file__).parent.parent
SRC_DIR = PROJECT_ROOT / "src"
DIST_DIR = PROJECT_ROOT / "dist"
BUILD_DIR = PROJECT_ROOT / "build"
VERSION_FILE = SRC_DIR / "version.py"
CHANGELOG_FILE = PROJECT_ROOT / "CHANGELOG.md"

EXE_NAME = "mocr-solver"
EXE_SUFFIX = ".exe" if sys.platform == "win32" else ""

VERSION_PATTERN = re.compile(r'__version__\s*=\s*["\'](\d+)\.(\d+)\.(\d+)["\']')
UNRELEASED_PATTERN = re.compile(r"## \[Unreleased\]\n(.*?)(?=\n## \[|\Z)", re.DOTALL)


class Version(NamedTuple):
    major: int
    minor: int
    patch: int

    def __str__(self) -> str:
        return f"{self.major}.{self.minor}.{self.patch}"

    def bumped(self, part: str) -> "Version":
        if part == "major":
            return Version(self.major + 1, 0, 0)
        if part == "minor":
            return Version(self.major, self.minor + 1, 0)
        if part == "patch":
            return Version(self.major, self.minor, self.patch + 1)
        raise ValueError(f"Invalid bump type: {part}")


def read_version() -> Version:
    match = VERSION_PATTERN.search(VERSION_FILE.read_text(encoding="utf-8"))
    if not match:
        raise ValueError(f"No MAJOR.MINOR.PATCH __version__ in {VERSION_FILE}")
    return Version(*(int(g) for g in match.groups()))


def write_version(version: Version):
    content = VERSION_PATTERN.sub(f'__version__ = "{version}"', VERSION_FILE.read_text(encoding="utf-8"))
    VERSION_FILE.write_text(content, encoding="utf-8")
    print(f"version.py -> {version}")


def roll_changelog(version: Version) -> str:
    """Move the Unreleased notes under a dated heading for ``version``.

    Returns:
        The notes that were moved (empty when there were none)
    """
    content = CHANGELOG_FILE.read_text(encoding="utf-8")
    match = UNRELEASED_PATTERN.search(content)
    if not match:
        raise ValueError(f"No '## [Unreleased]' section in {CHANGELOG_FILE}")
    notes = match.group(1).strip()
    section = f"## [Unreleased]\n\n## [{version}] - {date.today().isoformat()}\n"
    if notes:
        section += f"{notes}\n"
    content = content[:match.start()] + section + content[match.end():]
    CHANGELOG_FILE.write_text(content, encoding="utf-8")
    print(f"CHANGELOG.md -> [{version}]")
    return notes


def run_tests() -> bool:
    print("\nRunning tests...")
    result = subprocess.run([sys.executable, "-m", "pytest", "-q", "-m", "not slow"], cwd=PROJECT_ROOT)
    return result.returncode == 0


def build_executable(version: Version, clean: bool = False) -> Path:
    """Build dist/mocr-solver-<version> with PyInstaller and smoke-run it."""
    if clean:
        for path in (DIST_DIR, BUILD_DIR):
            shutil.rmtree(path, ignore_errors=True)

    exe_name = f"{EXE_NAME}-{version}"
    cmd = [
        sys.executable, "-m", "PyInstaller",
        "--onefile",
        "--console",
        "--name", exe_name,
        "--distpath", str(DIST_DIR),
        "--workpath", str(BUILD_DIR),
        "--specpath", str(BUILD_DIR),
        "--paths", str(SRC_DIR),
        "--hidden-import", "pydantic",
        str(SRC_DIR / "main.py"),
    ]
    print(f"\nRunning: {' '.join(cmd)}")
    if subprocess.run(cmd, cwd=PROJECT_ROOT).returncode != 0:
        raise RuntimeError("PyInstaller build failed")

    exe_path = DIST_DIR / f"{exe_name}{EXE_SUFFIX}"
    smoke = subprocess.run([str(exe_path), "--version"], capture_output=True, text=True)
    if smoke.returncode != 0 or str(version) not in smoke.stdout:
        raise RuntimeError(f"Built executable failed its --version check: {smoke.stdout or smoke.stderr}")
    return exe_path


def main(argv: Optional[list] = None) -> int:
    parser = argparse.ArgumentParser(
        description="Build the mocr-solver executable",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=__doc__,
    )
    parser.add_argument("--bump", choices=["major", "minor", "patch"], help="Bump the version first")
    parser.add_argument("--clean", action="store_true", help="Remove build/ and dist/ before building")
    parser.add_argument("--skip-tests", action="store_true", help="Build without running the tests")
    parser.add_argument("--no-build", action="store_true", help="Only bump the version and CHANGELOG")
    args = parser.parse_args(argv)

    version = read_version()
    print(f"Current version: {version}")
    if args.bump:
        version = version.bumped(args.bump)
        write_version(version)
        if not roll_changelog(version):
            print("Warning: the Unreleased section of CHANGELOG.md was empty")

    if args.no_build:
        return 0
    if not args.skip_tests and not run_tests():
        print("Tests failed, aborting build")
        return 1

    exe_path = build_executable(version, clean=args.clean)
    print(f"\nBuilt {exe_path} ({version})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
