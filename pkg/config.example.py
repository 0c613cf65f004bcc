"""
Configuration file example.
Copy this to config.py and adjust the values you need.
Every UPPER_CASE name here overrides the matching FUSION_LIMITS_* setting.
"""

# Group and morphism caps
# Larger groups are rejected before any fusion closure starts
GROUP_SIZE_CAP = 10000
MORPHISM_CAP = 2000000

# Cohomology
# (largest group order, highest degree) pairs; larger groups use the fallback
COHOMOLOGY_DEGREE_CAPS = ((16, 4), (32, 3), (64, 2))
COHOMOLOGY_DEGREE_FALLBACK = 1
COCHAIN_ENTRY_CAP = 60000000

# Higher limits
# auto | cobar | resolution
LIMIT_METHOD = "auto"
COBAR_DEGREE_CAP = 5
COBAR_DIMENSION_CAP = 20000
RESOLUTION_DIMENSION_CAP = 200000
DENSE_COLUMN_LIMIT = 4096

# Application Settings
OUTPUT_DIR = "reports"
LOG_LEVEL = "WARNING"
