import unittest
import sys
import json
import tempfile
from pathlib import Path

import yaml

# Add the project root to the Python path
project_root = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(project_root))

from dgl_lib.algebra.convolution import ConvolutionElement
from dgl_lib.cli import main
from dgl_lib.examples.registry import build_example
from dgl_lib.groupoid.fragment import enumerate_fragment
from dgl_lib.groupoid.structure import StructureTag
from dgl_lib.io.json_codec import save_element


class TestCommands(unittest.TestCase):
    """
    Runs the command line end to end and checks exit statuses and the
    files it writes.
    """

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = Path(self._tmp.name)

    def tearDown(self):
        self._tmp.cleanup()

    def _run(self, *argv) -> int:
        return main(['--quiet', *argv])

    def _json(self, name: str):
        with open(self.tmp / name, 'r', encoding='utf-8') as f:
            return json.load(f)

    def test_list_examples(self):
        self.assertEqual(self._run('list-examples'), 0)

    def test_usage_errors(self):
        self.assertEqual(self._run('build', '--example', 'nosuch'), 2)
        self.assertEqual(self._run('build', '--example', 'unital-ring', '--param', 'n7'), 2)
        self.assertEqual(self._run('build'), 2)
        self.assertEqual(self._run('verify', '--example', 'unital-ring', '--seed', '-1'), 2)
        self.assertEqual(self._run('frobnicate'), 2)

    def test_build_listing(self):
        output = str(self.tmp / "ring.json")
        self.assertEqual(self._run('build', '--example', 'unital-ring', '--param', 'n=5', '--output', output), 0)
        listing = self._json("ring.json")
        self.assertEqual(listing['omega-size'], 13)
        self.assertEqual(listing['omega-status'], 'exhaustive')
        self.assertEqual(set(listing['omega'][0]), {'h', 'k', 'h|>k', 'h<|k'})

    def test_run_seed_reaches_the_sampled_window(self):
        output = str(self.tmp / "gl2.json")
        status = self._run('build', '--example', 'gl2-scalars', '--param', 'samples=2', '--seed', '4',
                           '--output', output)
        self.assertEqual(status, 0)
        self.assertEqual(self._json("gl2.json")['header']['params']['seed'], '4')

    def test_verify_writes_the_report(self):
        output = str(self.tmp / "report.json")
        status = self._run('verify', '--example', 'unital-ring', '--param', 'n=5',
                           '--suite', 'identities', '--output', output)
        self.assertEqual(status, 0)
        self.assertTrue(self._json("report.json")['passed'])

    def test_self_test_fails(self):
        output = str(self.tmp / "self-test.json")
        self.assertEqual(self._run('verify', '--self-test', '--output', output), 1)
        self.assertFalse(self._json("self-test.json")['passed'])

    def test_norm_of_the_unit(self):
        output = str(self.tmp / "norm.json")
        self.assertEqual(self._run('norm', '--example', 'group-case', '--param', 'group=z2', '--output', output), 0)
        result = self._json("norm.json")
        self.assertEqual(result['i-norm'], '1')
        self.assertAlmostEqual(result['reduced-norm']['value'], 1.0)
        self.assertTrue(result['c-star-identity'])

    def test_norm_of_an_element_file(self):
        instance = build_example('group-case', {'group': 'z2'})
        hs, ks = instance.fragment_window
        fragment = enumerate_fragment(instance.pair, StructureTag.G, hs, ks)
        f = ConvolutionElement(fragment, {x: 1 for x in fragment.elements})
        element = save_element(f, self.tmp / "f.json")

        output = str(self.tmp / "norm.json")
        status = self._run('norm', '--example', 'group-case', '--element', str(element), '--output', output)
        self.assertEqual(status, 0)
        result = self._json("norm.json")
        self.assertEqual(result['i-norm'], '2')
        self.assertAlmostEqual(result['reduced-norm']['value'], 2.0)

    def test_norm_needs_an_etale_pair(self):
        self.assertEqual(self._run('norm', '--example', 'axb', '--param', 'samples=4'), 3)

    def test_export(self):
        self.assertEqual(self._run('export', '--example', 'unital-ring', '--param', 'n=5', '--cap', '5'), 3)
        dot = self.tmp / "fragment.dot"
        self.assertEqual(self._run('export', '--example', 'semidirect', '--format', 'dot',
                                   '--structure', 'Ghat', '--output', str(dot)), 0)
        self.assertTrue(dot.read_text(encoding='utf-8').startswith("digraph"))
        self.assertEqual(self._run('export', '--example', 'semidirect', '--output', str(self.tmp / "f.json")), 0)
        exported = self._json("f.json")
        self.assertEqual(exported['structure'], 'G-structure')
        self.assertEqual(exported['closure-status'], 'closed')

    def test_suite(self):
        suite = self.tmp / "suite"
        suite.mkdir()
        with open(suite / 'config.yml', 'w', encoding='utf-8') as f:
            yaml.safe_dump({'suite': {'seed': 3, 'samples': 4}}, f)
        with open(suite / 'examples.yml', 'w', encoding='utf-8') as f:
            yaml.safe_dump([{'example': 'group-case', 'params': {'group': 'z5'}}], f)
        self.assertEqual(self._run('suite', str(suite)), 0)
        self.assertTrue((suite / 'report.yml').is_file())
        self.assertEqual(self._run('suite', str(self.tmp / "missing")), 2)


if __name__ == '__main__':
    unittest.main()
