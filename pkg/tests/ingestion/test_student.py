import tempfile
import unittest

import numpy as np

from fair_world.data.dataset import PRIVILEGED, UNPRIVILEGED
from fair_world.exceptions import IngestionError
from fair_world.ingestion import load_student, make_student_balanced
from fair_world.metrics import spd

from ..toys import toy_dataset
from .sources import STUDENT_CSV, write_student


class TestLoadStudent(unittest.TestCase):
    def setUp(self) -> None:
        self.directory = tempfile.mkdtemp()

    # Tests that G3 drives score and label and boys form the unprivileged group
    def test_load(self):
        student = load_student(write_student(self.directory))
        self.assertEqual(student.name, 'student')
        self.assertEqual(len(student), 6)
        np.testing.assert_array_equal(student.score, [12, 9, 10, 15, 8, 13])
        np.testing.assert_array_equal(student.label, [1, 0, 1, 1, 0, 1])
        np.testing.assert_array_equal(student.sensitive, [0, 1, 0, 1, 0, 1])
        self.assertEqual(student.noise_intensity, 0.1)

    # Tests that G3 is excluded from the features while G1 and G2 are kept
    def test_features(self):
        student = load_student(write_student(self.directory))
        self.assertEqual(student.feature_names, ['school', 'sex', 'age', 'G1', 'G2'])
        self.assertNotIn('sex', student.features.columns)

    # Tests that a grade of exactly 10 is a pass and 9 is not
    def test_threshold_rule(self):
        student = load_student(write_student(self.directory))
        self.assertEqual(student.label[student.score == 10][0], 1)
        self.assertEqual(student.label[student.score == 9][0], 0)

    # Tests that a missing file names the path
    def test_missing_file(self):
        with self.assertRaises(IngestionError) as context:
            load_student(f"{self.directory}/absent.csv")
        self.assertEqual(context.exception.path, f"{self.directory}/absent.csv")

    # Tests that a row with too many fields aborts with its line number
    def test_malformed_row(self):
        lines = STUDENT_CSV.splitlines()
        lines[3] = lines[3] + ';"extra"'
        with self.assertRaises(IngestionError) as context:
            load_student(write_student(self.directory, "\n".join(lines) + "\n"))
        self.assertEqual(context.exception.row, 4)

    # Tests that a non numeric final grade aborts with its row number
    def test_non_numeric_grade(self):
        content = STUDENT_CSV.replace('"M";17;9;9;9', '"M";17;9;9;"x"')
        with self.assertRaises(IngestionError) as context:
            load_student(write_student(self.directory, content))
        self.assertEqual(context.exception.row, 3)


class TestStudentBalanced(unittest.TestCase):
    def setUp(self) -> None:
        self.student = toy_dataset(
            sensitive=[0, 0, 0, 0, 0, 0, 1, 1, 1, 1],
            label=[1, 1, 1, 1, 1, 0, 1, 1, 1, 0],
            name='student',
        )

    # Tests that privileged positives are removed until sizes and positive counts match
    def test_balanced(self):
        balanced = make_student_balanced(self.student, seed=3)
        self.assertEqual(balanced.name, 'student_balanced')
        self.assertEqual(balanced.group_size(PRIVILEGED), balanced.group_size(UNPRIVILEGED))
        self.assertEqual(len(balanced), 8)
        self.assertEqual(spd(balanced.label, balanced.sensitive), 0.0)
        removed = set(self.student.instance_ids) - set(balanced.instance_ids)
        self.assertTrue(all(self.student.label[i] == 1 and self.student.sensitive[i] == 0 for i in removed))

    # Tests that the removal is deterministic given the seed
    def test_deterministic(self):
        first = make_student_balanced(self.student, seed=3)
        self.assertTrue(first.equals(make_student_balanced(self.student, seed=3)))

    # Tests that an already balanced dataset keeps its rows under the balanced name
    def test_already_balanced(self):
        student = toy_dataset(sensitive=[0, 0, 1, 1], label=[1, 0, 1, 0], name='student')
        balanced = make_student_balanced(student, seed=0)
        self.assertEqual(balanced.name, 'student_balanced')
        self.assertEqual(student.name, 'student')
        self.assertTrue(balanced.equals(student.replace(name='student_balanced')))


if __name__ == '__main__':
    unittest.main()
