"""Special Cohen-Macaulay modules over quotient surface singularities."""
