"""
Lists where the benchmark datasets can be obtained. Nothing is downloaded; place
the CSV files (header row, label column last) in $ICLSTORCH_DATA_DIR.
"""
import argparse

from iclstorch.bench.Dataset import REFERENCE_DATASETS, SSL_BENCHMARKS, UCI


def main():
    parser = argparse.ArgumentParser(description="List benchmark dataset sources.")
    parser.add_argument(
        "--source", choices=["all", "uci", "ssl"], default="all", help="restrict the listing"
    )
    args = parser.parse_args()
    wanted = {"all": (UCI, SSL_BENCHMARKS), "uci": (UCI,), "ssl": (SSL_BENCHMARKS,)}[args.source]
    print("%-12s %7s %8s %8s  %s" % ("dataset", "objects", "features", "majority", "source"))
    for name, reference in REFERENCE_DATASETS.items():
        if reference.source in wanted:
            print(
                "%-12s %7d %8d %8.2f  %s"
                % (name, reference.objects, reference.features, reference.majority, reference.source)
            )


if __name__ == "__main__":
    main()
