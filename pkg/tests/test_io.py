import unittest
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

# Add the project root to the Python path
project_root = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(project_root))

from dgl_lib.algebra.convolution import ConvolutionElement
from dgl_lib.algebra.laws import random_elements
from dgl_lib.core.errors import UsageError, ValidationError
from dgl_lib.examples.semidirect import build_semidirect
from dgl_lib.groupoid.fragment import enumerate_fragment
from dgl_lib.groupoid.structure import StructureTag
from dgl_lib.io.json_codec import (dump_json, element_from_json, element_to_json, load_element, load_fragment,
                                   read_json, round_floats, save_element, save_fragment)


class TestJsonCodec(unittest.TestCase):

    def test_output_is_deterministic(self):
        first = dump_json({'b': 1 / 3, 'a': [Fraction(1, 2), (1, 2)]}, precision=4)
        second = dump_json({'a': [Fraction(1, 2), (1, 2)], 'b': 1 / 3}, precision=4)
        self.assertEqual(first, second)
        self.assertTrue(first.endswith("\n"))
        self.assertLess(first.index('"a"'), first.index('"b"'))
        self.assertEqual(round_floats({'x': 0.123456789, 'y': Fraction(2, 3)}, 3), {'x': 0.123, 'y': '2/3'})

    def test_bad_files(self):
        with tempfile.TemporaryDirectory() as tmp:
            broken = Path(tmp) / "broken.json"
            broken.write_text("{not json", encoding='utf-8')
            with self.assertRaises(UsageError):
                read_json(broken)
            with self.assertRaises(UsageError):
                read_json(Path(tmp) / "missing.json")


class TestStoredObjects(unittest.TestCase):
    """Fragments and convolution elements written to disk and read back."""

    @classmethod
    def setUpClass(cls):
        cls.pair = build_semidirect({}).pair
        cls.fragment = enumerate_fragment(cls.pair, StructureTag.G)

    def test_element_file(self):
        f = random_elements(self.fragment, 1, seed=7)[0] + ConvolutionElement.unit_element(self.fragment)
        with tempfile.TemporaryDirectory() as tmp:
            path = save_element(f, Path(tmp) / "nested" / "f.json")
            self.assertEqual(load_element(path, self.fragment), f)
            self.assertEqual(read_json(path)['pair'], self.pair.pair_id)

    def test_bare_list_and_foreign_pair(self):
        f = ConvolutionElement.unit_element(self.fragment)
        self.assertEqual(element_from_json(f.to_json(), self.fragment), f)
        wrapped = element_to_json(f)
        wrapped['pair'] = "semidirect(m=2,n=5,a=4)"
        with self.assertRaises(ValidationError):
            element_from_json(wrapped, self.fragment)

    def test_fragment_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = save_fragment(self.fragment, Path(tmp) / "fragment.json", {'seed': 0})
            restored = load_fragment(path, self.pair)
            self.assertEqual(restored.elements, self.fragment.elements)
            self.assertTrue(restored.is_closed)


if __name__ == '__main__':
    unittest.main()
