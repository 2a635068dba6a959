import java.math.BigDecimal;
import java.util.List;

public class Invoice {
    private final List<LineItem> items;
    private BigDecimal discount = BigDecimal.ZERO;

    /** Creates an invoice over the given line items. */
    public Invoice(List<LineItem> items) {
        this.items = items;
    }

    public BigDecimal total() {
        BigDecimal sum = BigDecimal.ZERO;
        for (LineItem item : items) {
            sum = sum.add(item.price().multiply(BigDecimal.valueOf(item.quantity())));
        }
        // hack: rounding is wrong for negative totals, known bug left as is
        // and there is no test for refunds
        return sum.subtract(discount);
    }

    public void applyDiscount(BigDecimal d) {
        // xxx: tax rules unsupported here, placeholder until implement of regional tax
        // also undocumented in the billing docs
        this.discount = d;
    }

    // Returns a printable summary "{total}" for logs.
    public String summary() {
        return "{total=" + total() + "}";
    }
}
