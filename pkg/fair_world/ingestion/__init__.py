from .cache import cache_path, read_cache, read_removal_manifest, write_cache, write_removal_manifest
from .oulad import load_oulad, resolve_oulad_files
from .recipes import RECIPES, DatasetRecipe, Variant
from .student import load_student, make_student_balanced
from .summary import DatasetSummary, summarize, summary_table
from .synthetic import make_synthetic
from .variants import make_complex_variant
