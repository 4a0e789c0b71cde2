"""
Test script for Adjust
Validates installation, configuration and the bundled figure graphs
"""

import sys
from pathlib import Path


def test_file_structure():
    """Test that required files and directories exist"""
    print("🔍 Testing file structure...")

    required_files = [
        "requirements.txt",
        "env.example",
        "adjust.py",
        "pytest.ini",
        "docs/json_schema.md",
        "src/main.py",
        "src/config.py",
        "src/errors.py",
        "src/graphs/dag.py",
        "src/adjustment/efficiency_graph.py",
        "src/cuts/flow.py",
        "src/finders/base_finder.py",
        "src/oracle/variance.py",
        "src/utils/file_manager.py",
        "README.md",
    ]

    missing = []
    for file_path in required_files:
        if Path(file_path).exists():
            print(f"✅ {file_path}")
        else:
            print(f"❌ {file_path} - Missing")
            missing.append(file_path)

    assert not missing, f"Missing files: {', '.join(missing)}"


def test_dependencies():
    """Test that required dependencies are available"""
    print("\n🔍 Testing dependencies...")

    missing = []
    for package in ["dotenv", "colorama", "tqdm", "numpy", "networkx", "pytest"]:
        try:
            __import__(package)
            print(f"✅ {package}")
        except ImportError:
            print(f"❌ {package} - Not installed")
            missing.append(package)

    assert not missing, f"Missing packages: {', '.join(missing)}"


def test_imports():
    """Test that all package modules can be imported"""
    print("\n🔍 Testing imports...")

    from src.config import Config
    from src.finders import analyze
    from src.oracle import influence_variance
    from src.utils.file_manager import FileManager

    print("✅ Package modules imported successfully")


def test_configuration():
    """Test configuration loading"""
    print("\n🔍 Testing configuration...")

    from src.config import Config

    Config.print_config()
    assert Config.validate(), "Configuration is invalid"


def test_figures():
    """Test that every bundled figure graph parses and has an admissible query"""
    print("\n🔍 Testing figure graphs...")

    from src.adjustment.criteria import exists_adjustment
    from src.adjustment.query import Query
    from src.utils.file_manager import FileManager

    manager = FileManager()
    for graph_file in sorted(Path("graphs").glob("*.g")):
        g = manager.load_graph(graph_file)
        spec = manager.load_query(graph_file.with_suffix(".q"))
        assert g is not None and spec is not None, f"Could not read {graph_file}"
        q = Query.from_labels(g, spec.exposure, spec.outcome, spec.policy, spec.observed)
        assert exists_adjustment(g, q), f"{graph_file} has no admissible set"
        print(f"✅ {graph_file} ({g.n} nodes)")


def main():
    """Main test function"""
    print("🚀 Adjust - Setup Test")
    print("=" * 50)

    tests = [
        ("File Structure", test_file_structure),
        ("Dependencies", test_dependencies),
        ("Imports", test_imports),
        ("Configuration", test_configuration),
        ("Figure Graphs", test_figures),
    ]

    results = []
    for test_name, test_func in tests:
        try:
            test_func()
            results.append((test_name, True))
        except Exception as e:
            print(f"❌ {test_name} test failed: {e}")
            results.append((test_name, False))

    print("\n" + "=" * 50)
    print("📊 Test Results Summary:")
    print("=" * 50)

    passed = 0
    for test_name, result in results:
        status = "✅ PASS" if result else "❌ FAIL"
        print(f"{status} {test_name}")
        if result:
            passed += 1

    print(f"\nOverall: {passed}/{len(results)} tests passed")

    if passed == len(results):
        print("🎉 All tests passed! Setup is ready.")
        return True
    print("⚠️ Some tests failed. Please check the issues above.")
    return False


if __name__ == "__main__":
    success = main()
    sys.exit(0 if success else 1)
