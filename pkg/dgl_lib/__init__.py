# Double Groupoid Workbench (DGL)
# Exact construction and verification of the double groupoids of admissible
# pairs (H, K), their finite fragments and convolution algebras.
