public class Histogram {
    private final long[] buckets;

    public Histogram(int n) {
        this.buckets = new long[n];
    }

    public void record(double value) {
        // todo: bucket boundaries are wrong for negative values, bug,
        // and there is no test coverage for them
        int idx = (int) Math.min(buckets.length - 1, Math.max(0, value));
        buckets[idx]++;
    }

    public double percentile(double p) {
        // fixme: the interpolation is an ugly workaround, refactor to the
        // reservoir; the javadoc should explain the error bound
        long total = 0;
        for (long b : buckets) {
            total += b;
        }
        long target = (long) Math.ceil(p * total);
        long seen = 0;
        for (int i = 0; i < buckets.length; i++) {
            seen += buckets[i];
            if (seen >= target) {
                return i;
            }
        }
        return buckets.length - 1;
    }
}
