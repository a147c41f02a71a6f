"""dhpbound: discrete-log to Diffie-Hellman reduction and oracle-call lower bounds.

The package has two halves. The runnable half implements the reduction that
recovers a discrete logarithm from a Diffie-Hellman oracle on desk-scale
prime-order groups, with exact instrumentation of every oracle call and group
operation. The analytic half turns that instrumentation into lower bounds for
the standardized SECG curve parameters shipped in the embedded database.
"""

__version__ = "0.1.0"
