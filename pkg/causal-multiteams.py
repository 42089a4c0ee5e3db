#!/usr/bin/env python3
"""
Cross-platform wrapper for the causal multiteam CLI.
Usage: python causal-multiteams.py <command> [options]
Example: python causal-multiteams.py discriminant --delta 1/2
"""
import sys
import subprocess
import os

def main():
    if len(sys.argv) < 2:
        print("Usage: python causal-multiteams.py <command> [options]")
        print("Example: python causal-multiteams.py check -m scripts/causal_multiteams/data/sum_chain.json -f \"Pr(Z=3) >= 1/3\"")
        sys.exit(2)

    script_path = os.path.join("scripts", "causal_multiteams", "cli.py")

    if not os.path.exists(script_path):
        print(f"Error: Could not find {script_path}")
        sys.exit(2)

    # Run the CLI with all arguments passed through and keep its exit code
    result = subprocess.run([sys.executable, script_path] + sys.argv[1:])
    sys.exit(result.returncode)

if __name__ == "__main__":
    main()
