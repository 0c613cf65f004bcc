"""
Test script to verify all components of Fusion Limits.
Run this to ensure everything is set up correctly.
"""

import sys
import os

# Add the repository root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

def test_imports():
    """Test that all required packages can be imported."""
    print("Testing imports...")
    try:
        import numpy
        import pandas
        import dotenv
        print("✓ All required packages are installed")
        return True
    except ImportError as e:
        print(f"✗ Import error: {e}")
        print("Run: pip install -r requirements.txt")
        return False

def test_modules():
    """Test that all library modules load correctly."""
    print("\nTesting library modules...")
    try:
        from src import groups, presets, fusion, fp_linalg, cohomology
        from src import orbit_category, homalg, rep_graphs, verification
        from src.settings import get_settings

        settings = get_settings()
        print("✓ All modules imported successfully")
        print(f"  - Limit method: {settings.limit_method}")
        print(f"  - Group size cap: {settings.group_size_cap}")
        return True
    except Exception as e:
        print(f"✗ Module error: {e}")
        import traceback
        traceback.print_exc()
        return False

def test_fixture():
    """Build the S4 fusion system at p = 2 and classify it."""
    print("\nTesting the S4 fixture...")
    try:
        from src.fusion import classify, realize
        from src.groups import sylow
        from src.presets import symmetric

        G = symmetric(4)
        S = sylow(G, 2)
        F = realize(G, S, 2)
        reports = classify(F)
        centric = sum(r.centric for r in reports)
        essential = sum(r.essential for r in reports)
        if len(reports) == 10 and centric == 4 and essential == 1:
            print(f"✓ Fixture working! {len(reports)} subgroups, {centric} centric, {essential} essential")
            return True
        print(f"✗ Unexpected classification: {len(reports)} subgroups, {centric} centric, {essential} essential")
        return False
    except Exception as e:
        print(f"✗ Fixture error: {e}")
        return False

def test_limits():
    """Compute a small limit table over the centric orbit category of S4."""
    print("\nTesting higher limits...")
    try:
        from src.fusion import realize
        from src.groups import sylow
        from src.homalg import higher_limit_dims
        from src.orbit_category import build_orbit_category, centric_family, cohomology_functor
        from src.presets import symmetric

        G = symmetric(4)
        F = realize(G, sylow(G, 2), 2)
        O = build_orbit_category(F, centric_family(F))
        dims = higher_limit_dims(O, cohomology_functor(O, 1), 2)
        if dims == [1, 0, 0]:
            print(f"✓ Limits working! lim^n H^1 for n = 0, 1, 2: {dims}")
            return True
        print(f"✗ Unexpected limits: {dims}")
        return False
    except Exception as e:
        print(f"✗ Limits error: {e}")
        return False

def test_cli():
    """Check that the command-line entry point builds its parser."""
    print("\nTesting the command line...")
    try:
        import app

        parser = app.build_parser()
        args = parser.parse_args(["classify", "--group", "preset:cyclic:2"])
        if args.command == "classify":
            print("✓ Command-line parser is valid")
            return True
        print("✗ Unexpected parse result")
        return False
    except Exception as e:
        print(f"✗ Error loading app.py: {e}")
        return False

def main():
    """Run all tests."""
    print("=" * 60)
    print("Fusion Limits - Setup Test")
    print("=" * 60)

    results = []

    results.append(("Imports", test_imports()))
    results.append(("Modules", test_modules()))
    results.append(("S4 Fixture", test_fixture()))
    results.append(("Higher Limits", test_limits()))
    results.append(("Command Line", test_cli()))

    print("\n" + "=" * 60)
    print("TEST RESULTS")
    print("=" * 60)

    for test_name, passed in results:
        status = "✓ PASS" if passed else "✗ FAIL"
        print(f"{test_name:.<30} {status}")

    all_passed = all(result[1] for result in results)

    print("=" * 60)
    if all_passed:
        print("🎉 All tests passed! You're ready to run the tool.")
        print("\nTo run a check, for example:")
        print("  python app.py verify sharpness --group preset:symmetric:4 --sylow 2")
        print("\nOr use the launch script:")
        print("  ./run.sh")
    else:
        print("⚠️  Some tests failed. Please fix the issues above.")
    print("=" * 60)

    return all_passed

if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
