#!/usr/bin/env python3
"""
Tests for the Lint Orchestrator and the command line

Run with: python -m pytest test_lint_orchestrator.py -v
Or: python test_lint_orchestrator.py
"""

import io
import re
import shutil
import subprocess
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

from rdfkit.namespaces import EARL, RDF, Namespace
from rdfkit.turtle import parse_turtle_file
from lint_orchestrator import LintOrchestrator
from main import EXIT_BLOCKING, EXIT_ERROR, EXIT_OK, RunRequest, main, parse_request
from project.layout import scan_repository
from project.parameters import Parameters
from project.version import compute_version
from suites.config import LintConfig

FIXTURES = Path(__file__).resolve().parent / "fixtures"
VOCABULARY = Namespace(LintConfig.REPORT_VOCABULARY)


def run_cli(*argv):
    """Run main() and return (exit code, stdout, stderr)"""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def reports_in(directory, suffix):
    return sorted(Path(directory).glob(f"*{suffix}"))


class OrchestratorTestCase(unittest.TestCase):
    """Temporary copies of the fixture repositories"""

    def setUp(self):
        """Set up test fixtures"""
        self.test_dir = tempfile.mkdtemp()

    def tearDown(self):
        """Clean up test fixtures"""
        if Path(self.test_dir).exists():
            shutil.rmtree(self.test_dir)

    def fixture(self, name):
        root = Path(self.test_dir) / name
        shutil.copytree(FIXTURES / name, root)
        return root


class TestLintOrchestrator(OrchestratorTestCase):
    """Test LintOrchestrator functionality"""

    def test_init(self):
        """Test orchestrator initialization"""
        orchestrator = LintOrchestrator(self.test_dir)
        self.assertEqual(orchestrator.project_dir, Path(self.test_dir))
        self.assertEqual(orchestrator.output_dir, Path(self.test_dir) / LintConfig.OUTPUT_DIR)
        self.assertEqual(orchestrator.parameters, Parameters())

    def test_output_override(self):
        """Test relative and absolute output folders"""
        self.assertEqual(LintOrchestrator(self.test_dir, output_dir="out").output_dir, Path(self.test_dir) / "out")
        absolute = Path(self.test_dir) / "elsewhere"
        self.assertEqual(LintOrchestrator(self.test_dir, output_dir=absolute).output_dir, absolute)

    def test_init_project_skeleton(self):
        """Test that init creates the folder roles and the parameters file"""
        orchestrator = LintOrchestrator(self.test_dir)
        with redirect_stdout(io.StringIO()):
            created = orchestrator.init_project()
        root = Path(self.test_dir)
        for folder in (LintConfig.MODULES_DIR, LintConfig.DOMAINS_DIR, LintConfig.USE_CASES_DIR,
                       LintConfig.CUSTOM_MODEL_TESTS_DIR, LintConfig.CUSTOM_DATA_TESTS_DIR, LintConfig.OUTPUT_DIR):
            self.assertTrue((root / folder).is_dir(), folder)
        self.assertIn(root / LintConfig.PARAMETERS_FILE, created)
        self.assertEqual((root / LintConfig.PARAMETERS_FILE).read_bytes(), LintConfig.DEFAULT_PARAMETERS.read_bytes())

    def test_init_idempotent(self):
        """Test that a second init changes nothing"""
        orchestrator = LintOrchestrator(self.test_dir)
        with redirect_stdout(io.StringIO()):
            orchestrator.init_project()
            self.assertEqual(orchestrator.init_project(), [])

    def test_init_keeps_existing_files(self):
        """Test that init never overwrites a file"""
        root = self.fixture("clean")
        before = {path: path.read_bytes() for path in root.rglob("*") if path.is_file()}
        with redirect_stdout(io.StringIO()):
            LintOrchestrator(root).init_project()
        for path, content in before.items():
            self.assertEqual(path.read_bytes(), content, path)

    def test_flush_twice(self):
        """Test flushing a filled then an empty output folder"""
        output = Path(self.test_dir) / LintConfig.OUTPUT_DIR
        output.mkdir(parents=True)
        (output / "old.ttl").write_text("", encoding="utf-8")
        (output / LintConfig.BADGES_DIR).mkdir()
        (output / ".gitkeep").touch()
        orchestrator = LintOrchestrator(self.test_dir)
        with redirect_stdout(io.StringIO()):
            self.assertEqual(orchestrator.flush_output(), 2)
            self.assertEqual(orchestrator.flush_output(), 0)
        self.assertEqual([path.name for path in output.iterdir()], [".gitkeep"])

    def test_flush_without_output(self):
        """Test flushing when no output folder exists"""
        self.assertEqual(LintOrchestrator(self.test_dir).flush_output(), 0)

    def test_normalize_paths(self):
        """Test that staged paths become repository-relative"""
        orchestrator = LintOrchestrator(self.test_dir)
        inside = Path(self.test_dir).resolve() / "src" / "a.ttl"
        outside = Path(tempfile.gettempdir()).resolve().parent / "b.ttl"
        self.assertEqual(orchestrator.normalize_paths([str(inside), "src/c.ttl", str(outside)]),
                         ["src/a.ttl", "src/c.ttl"])

    def test_explicit_developer(self):
        """Test that --developer wins"""
        self.assertEqual(LintOrchestrator(self.test_dir).resolve_developer("Ada"), "Ada")

    def test_clean_run(self):
        """Test that a clean project has no blocking outcome"""
        root = self.fixture("clean")
        with redirect_stdout(io.StringIO()) as out:
            result = LintOrchestrator(root).run_tests(LintConfig.SUITES, developer="Tester")
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(len(result.report_paths), 2)
        self.assertIn("=== acimov-lint ===", out.getvalue())
        subjects = {assertion.subject.id for assertion in result.assertions}
        self.assertIn("whole-merge", subjects)
        self.assertIn("use-case:use-cases/farm-tour/tour.ttl", subjects)
        self.assertIn("query:domains/livestock/milking/q2.rq", subjects)
        criteria = {assertion.criterion.id for assertion in result.assertions}
        self.assertIn("custom-model:classes-labelled", criteria)
        self.assertIn("custom-data:cows-labelled", criteria)

    def test_hmas_failure_census(self):
        """Test the exact set of failing assertions over the seeded hmas project"""
        root = self.fixture("hmas")
        with redirect_stdout(io.StringIO()):
            result = LintOrchestrator(root).run_tests(LintConfig.SUITES, developer="Tester")
        failing = {
            (assertion.subject.id, assertion.criterion.id)
            for assertion in result.assertions
            if any(outcome.type.is_failure for outcome in assertion.outcomes)
        }
        module_failures = {"english-labels", "term-differentiation", "term-referencing"}
        self.assertEqual(failing, {
            *(("module:src/hmas.ttl", criterion) for criterion in module_failures),
            *(("modules-merge", criterion) for criterion in module_failures),
            ("dataset:domains/robots/lab/dataset.ttl", "known-terms"),
        })
        self.assertEqual(result.exit_code, 0)


class TestCommandLine(OrchestratorTestCase):
    """Test the exit codes and console output of main()"""

    def test_parse_request(self):
        """Test flag parsing into a run request"""
        request, _ = parse_request(["test", "--model", "--query", "--mode", "ci", "--root", self.test_dir])
        self.assertEqual(request, RunRequest("test", ("model", "query"), "ci", None, Path(self.test_dir)))

    def test_clean_project_exit_zero(self):
        """Test the no-error baseline and its two reports"""
        root = self.fixture("clean")
        code, out, _ = run_cli("test", "--model", "--data", "--query", "--root", str(root), "--developer", "Tester")
        self.assertEqual(code, EXIT_OK)
        output = root / LintConfig.OUTPUT_DIR
        turtle = reports_in(output, ".ttl")
        markdown = reports_in(output, ".md")
        self.assertEqual(len(turtle), 1)
        self.assertEqual(len(markdown), 1)
        self.assertTrue(re.fullmatch(r"model-data-query-test-manual-Tester-\d{4}-\d\d-\d\dT\d\d-\d\d-\d\d\.ttl",
                                     turtle[0].name))
        graph = parse_turtle_file(turtle[0]).graph
        self.assertEqual(graph.subjects(RDF.type, VOCABULARY.MajorFail), set())
        self.assertTrue(graph.subjects(RDF.type, EARL.Assertion))
        self.assertIn("Report:", out)

    def test_pre_commit_blocks_syntax_error(self):
        """Test that a staged file with a syntax error blocks the commit"""
        root = self.fixture("syntax-error")
        code, out, _ = run_cli("test", "--model", "--mode", "pre-commit", "--root", str(root),
                               "--developer", "Tester", "--staged", "src/broken.ttl")
        self.assertEqual(code, EXIT_BLOCKING)
        self.assertIn("src/broken.ttl: syntax-error: src/broken.ttl:4:1: expected '.', found ':'", out)
        self.assertIn("Commit blocked.", out)
        turtle = reports_in(root / LintConfig.OUTPUT_DIR, ".ttl")
        graph = parse_turtle_file(turtle[0]).graph
        self.assertTrue(graph.subjects(RDF.type, VOCABULARY.MajorFail))

    def test_pre_commit_restricted_to_staged(self):
        """Test that only subjects involving staged files are tested"""
        root = self.fixture("syntax-error")
        with redirect_stdout(io.StringIO()):
            result = LintOrchestrator(root).run_tests(["model"], "pre-commit", ["src/good.ttl"], "Tester")
        self.assertEqual(result.exit_code, 0)
        for assertion in result.assertions:
            self.assertIn("src/good.ttl", assertion.subject.files)
        self.assertEqual({assertion.subject.id for assertion in result.assertions},
                         {"module:src/good.ttl", "modules-merge"})

    def test_ci_writes_badges(self):
        """Test that ci mode writes the badge endpoints"""
        root = self.fixture("clean")
        code, _, _ = run_cli("test", "--model", "--mode", "ci", "--root", str(root), "--developer", "Tester")
        self.assertEqual(code, EXIT_OK)
        badges = root / LintConfig.OUTPUT_DIR / LintConfig.BADGES_DIR
        names = {path.stem for path in badges.glob("*.json")}
        self.assertTrue(set(LintConfig.OUTCOME_ORDER) <= names)

    def test_usage_errors(self):
        """Test that usage errors exit with 2"""
        cases = [
            ("test", "--root", self.test_dir),
            ("deploy",),
            ("test", "--model", "--mode", "pre-commit", "--root", self.test_dir),
            ("test", "--model", "--root", str(Path(self.test_dir) / "missing")),
            ("test", "--model", "--unknown-flag"),
        ]
        for argv in cases:
            with self.subTest(argv=argv):
                code, _, err = run_cli(*argv)
                self.assertEqual(code, EXIT_ERROR)
                self.assertIn("acimov-lint: error:", err)

    def test_malformed_config(self):
        """Test that a malformed parameters file exits with 2 and its line"""
        root = self.fixture("clean")
        (root / LintConfig.PARAMETERS_FILE).write_text('{\n  "term_distance_threshold": 0\n}', encoding="utf-8")
        code, _, err = run_cli("test", "--model", "--root", str(root))
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn("line 2", err)

    def test_init_and_flush_commands(self):
        """Test init then flush twice from the command line"""
        code, _, _ = run_cli("init", "--root", self.test_dir)
        self.assertEqual(code, EXIT_OK)
        self.assertTrue((Path(self.test_dir) / LintConfig.PARAMETERS_FILE).is_file())
        self.assertEqual(run_cli("flush", "--root", self.test_dir)[0], EXIT_OK)
        self.assertEqual(run_cli("flush", "--root", self.test_dir)[0], EXIT_OK)


@unittest.skipUnless(shutil.which("git"), "git not available")
class TestGitIntegration(OrchestratorTestCase):
    """Test git integration features"""

    def setUp(self):
        """Set up git test repository"""
        super().setUp()
        self.root = self.fixture("clean")
        subprocess.run(['git', 'init'], cwd=self.root, capture_output=True)
        subprocess.run(['git', 'config', 'user.email', 'test@example.com'], cwd=self.root, capture_output=True)
        subprocess.run(['git', 'config', 'user.name', 'Test User'], cwd=self.root, capture_output=True)
        self.orchestrator = LintOrchestrator(self.root)

    def git(self, *args):
        return subprocess.run(['git', '-c', 'commit.gpgsign=false', *args],
                              cwd=self.root, capture_output=True, text=True)

    def test_get_git_user(self):
        """Test the developer name taken from git"""
        self.assertEqual(self.orchestrator.get_git_user(), "Test User")
        self.assertEqual(self.orchestrator.resolve_developer(), "Test User")

    def test_get_staged_files(self):
        """Test listing files staged for commit"""
        self.assertEqual(self.orchestrator.get_staged_files(), [])
        self.git('add', 'src/core.ttl')
        self.assertEqual(self.orchestrator.get_staged_files(), ['src/core.ttl'])

    def test_committed_version(self):
        """Test that a clean checkout is versioned by its HEAD commit"""
        self.git('add', '-A')
        self.git('commit', '-m', 'Initial ontology')
        head = self.git('rev-parse', 'HEAD').stdout.strip()
        layout = scan_repository(self.root, Parameters())
        version = compute_version(self.root, layout)
        self.assertEqual(version.version, head)
        self.assertIsNone(version.derived_from_commit)
        self.assertTrue(version.committed)

        with open(self.root / "src" / "core.ttl", 'a', encoding='utf-8') as f:
            f.write("\n# edited\n")
        version = compute_version(self.root, layout)
        self.assertEqual(version.derived_from_commit, head)
        self.assertTrue(re.fullmatch(r"[0-9a-f]{64}", version.version))


def run_tests():
    """Run all tests"""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()

    suite.addTests(loader.loadTestsFromTestCase(TestLintOrchestrator))
    suite.addTests(loader.loadTestsFromTestCase(TestCommandLine))
    suite.addTests(loader.loadTestsFromTestCase(TestGitIntegration))

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == '__main__':
    import sys
    success = run_tests()
    sys.exit(0 if success else 1)
