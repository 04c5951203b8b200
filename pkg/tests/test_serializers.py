import json
import unittest
from fractions import Fraction
from lib.configs import Arrow, DeltaConfig, HORIZONTAL, K_ARROW, Overpartition, Partition
from lib.contfrac import m_matrix
from lib.errors import DomainError
from lib.paths import LatticePath
from lib.qcore import MultiLaurent, Q, Y_INV, ZSeries
from lib.serializers import (config_from_json, config_to_json, dumps, laurent_from_json, laurent_to_json,
                             to_json_value, to_text)


class TestSerializers(unittest.TestCase):
    def test_laurent(self):
        data = laurent_to_json(2 - Q * Y_INV)
        self.assertEqual(data, {'g': 1, 'terms': [{'q': 0, 'y': 0, 'c': '2'}, {'q': 1, 'y': -1, 'c': '-1'}]})
        self.assertEqual(laurent_from_json(data), 2 - Q * Y_INV)

    def test_finer_granularity(self):
        data = laurent_to_json(Q, granularity=2)
        self.assertEqual(data['g'], 2)
        self.assertEqual(data['terms'][0]['q'], 2)

    def test_half_exponent(self):
        data = laurent_to_json(MultiLaurent.monomial(Fraction(1, 2), Fraction(3, 2)))
        self.assertEqual(data, {'g': 2, 'terms': [{'q': 3, 'y': 0, 'c': '1/2'}]})

    def test_series(self):
        data = to_json_value(ZSeries.geometric(1, 2))
        self.assertEqual(data['order'], 2)
        self.assertEqual(len(data['coeffs']), 3)

    def test_matrix_keys(self):
        self.assertEqual(sorted(to_json_value(m_matrix(Q))), ['a', 'b', 'c', 'd'])

    def test_config(self):
        c = DeltaConfig(2, Partition((1,)), frozenset({Arrow(HORIZONTAL, K_ARROW, 2)}))
        data = config_to_json(c)
        self.assertEqual(data, {'k': 2, 'partition': [1], 'arrows': [{'o': 'h', 'kind': 'k', 'i': 2}]})
        self.assertEqual(config_from_json(data), c)

    def test_overpartition_and_path(self):
        mu = Overpartition.from_parts([(2, False), (1, True)])
        self.assertEqual(to_json_value(mu), [{'part': 2, 'overlined': False}, {'part': 1, 'overlined': True}])
        self.assertEqual(to_json_value(LatticePath("UD")), "UD")

    def test_unsupported(self):
        with self.assertRaises(DomainError):
            to_json_value(1.5)

    def test_dumps_is_canonical(self):
        text = dumps({'value': 2 + Q, 'n': 2})
        self.assertEqual(text, dumps({'n': 2, 'value': Q + 2}))
        self.assertEqual(json.loads(text)['n'], 2)

    def test_text(self):
        self.assertEqual(to_text(2 + Q), "2 + q")
        self.assertEqual(to_text([Q, 1]), "q\n1")


if __name__ == '__main__':
    unittest.main()
